//! Axis-aligned boxes in R^3, their dynamically-relevant boundary pieces,
//! and a deterministic adaptive subdivision engine.

use crate::interval::Interval;

/// Product of three closed intervals: `x * y * z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IBox3 {
    pub x: Interval,
    pub y: Interval,
    pub z: Interval,
}

impl IBox3 {
    pub fn new(x: Interval, y: Interval, z: Interval) -> Self {
        Self { x, y, z }
    }

    pub fn contains_point(&self, p: [f64; 3]) -> bool {
        self.x.contains(p[0]) && self.y.contains(p[1]) && self.z.contains(p[2])
    }

    pub fn contains_box(&self, other: &IBox3) -> bool {
        self.x.contains_interval(&other.x)
            && self.y.contains_interval(&other.y)
            && self.z.contains_interval(&other.z)
    }

    /// Strict containment in the interior on all three axes.
    pub fn contains_box_strict(&self, other: &IBox3) -> bool {
        self.x.contains_interval_strict(&other.x)
            && self.y.contains_interval_strict(&other.y)
            && self.z.contains_interval_strict(&other.z)
    }

    pub fn intersect(&self, other: &IBox3) -> Option<IBox3> {
        Some(IBox3::new(
            self.x.intersect(&other.x)?,
            self.y.intersect(&other.y)?,
            self.z.intersect(&other.z)?,
        ))
    }

    pub fn is_disjoint(&self, other: &IBox3) -> bool {
        self.x.is_disjoint(&other.x)
            || self.y.is_disjoint(&other.y)
            || self.z.is_disjoint(&other.z)
    }

    /// Separation between two boxes: the largest per-axis gap, positive iff
    /// the boxes are disjoint.
    pub fn separation(&self, other: &IBox3) -> f64 {
        self.x
            .gap(&other.x)
            .max(self.y.gap(&other.y))
            .max(self.z.gap(&other.z))
    }

    pub fn widest_width(&self) -> f64 {
        self.x.width().max(self.y.width()).max(self.z.width())
    }

    pub fn hull(&self, other: &IBox3) -> IBox3 {
        IBox3::new(
            self.x.hull(&other.x),
            self.y.hull(&other.y),
            self.z.hull(&other.z),
        )
    }

    /// The eight corner points, in lexicographic (x, y, z) bit order.
    pub fn corners(&self) -> [[f64; 3]; 8] {
        let xs = [self.x.lo(), self.x.hi()];
        let ys = [self.y.lo(), self.y.hi()];
        let zs = [self.z.lo(), self.z.hi()];
        let mut out = [[0.0; 3]; 8];
        for i in 0..8 {
            out[i] = [xs[(i >> 2) & 1], ys[(i >> 1) & 1], zs[i & 1]];
        }
        out
    }

    /// Octant split: bisects every axis whose midpoint is resolvable.
    /// Children are produced in deterministic lexicographic (x, y, z) order.
    /// Returns `None` when no axis can be bisected at f64 resolution.
    pub fn split(&self) -> Option<Vec<IBox3>> {
        let sx = self.x.bisect();
        let sy = self.y.bisect();
        let sz = self.z.bisect();
        if sx.is_none() && sy.is_none() && sz.is_none() {
            return None;
        }
        let xs: Vec<Interval> = match sx {
            Some((a, b)) => vec![a, b],
            None => vec![self.x],
        };
        let ys: Vec<Interval> = match sy {
            Some((a, b)) => vec![a, b],
            None => vec![self.y],
        };
        let zs: Vec<Interval> = match sz {
            Some((a, b)) => vec![a, b],
            None => vec![self.z],
        };
        let mut children = Vec::with_capacity(xs.len() * ys.len() * zs.len());
        for &xi in &xs {
            for &yi in &ys {
                for &zi in &zs {
                    children.push(IBox3::new(xi, yi, zi));
                }
            }
        }
        Some(children)
    }
}

impl std::fmt::Display for IBox3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} x {} x {}", self.x, self.y, self.z)
    }
}

/// Which dynamical boundary class a face group belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryClass {
    /// The two faces transverse to the strong-stable axis (x = const).
    StrongStable,
    /// The two faces transverse to the expanding axis (y = const).
    StrongUnstable,
    /// All four faces with y = const or z = const.
    Unstable,
}

impl BoundaryClass {
    pub fn label(self) -> &'static str {
        match self {
            BoundaryClass::StrongStable => "ss",
            BoundaryClass::StrongUnstable => "uu",
            BoundaryClass::Unstable => "u",
        }
    }
}

/// A labeled group of degenerate boxes (faces) on the boundary of a box.
#[derive(Debug, Clone)]
pub struct BoundaryPiece {
    pub class: BoundaryClass,
    pub faces: Vec<IBox3>,
}

/// Splits the boundary of `b` into the three dynamically-relevant pieces:
/// ss = (endpoints of x) * y * z, uu = x * (endpoints of y) * z, and
/// u = x * boundary(y * z). The uu faces are a subset of the u faces.
pub fn boundary_decomposition(b: &IBox3) -> [BoundaryPiece; 3] {
    let xface = |v: f64| IBox3::new(Interval::point(v), b.y, b.z);
    let yface = |v: f64| IBox3::new(b.x, Interval::point(v), b.z);
    let zface = |v: f64| IBox3::new(b.x, b.y, Interval::point(v));

    let ss = vec![xface(b.x.lo()), xface(b.x.hi())];
    let uu = vec![yface(b.y.lo()), yface(b.y.hi())];
    let mut u = uu.clone();
    u.push(zface(b.z.lo()));
    u.push(zface(b.z.hi()));

    [
        BoundaryPiece {
            class: BoundaryClass::StrongStable,
            faces: ss,
        },
        BoundaryPiece {
            class: BoundaryClass::StrongUnstable,
            faces: uu,
        },
        BoundaryPiece {
            class: BoundaryClass::Unstable,
            faces: u,
        },
    ]
}

/// Verdict of a leaf predicate during subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafVerdict {
    /// The property holds on the whole leaf; stop refining it.
    Certified,
    /// Undecided; refine further (or report unresolved at the depth cap).
    Unknown,
    /// The property certifiably fails somewhere on the leaf; stop refining.
    Failed,
}

/// Result of an adaptive subdivision sweep. Leaves appear in deterministic
/// depth-first order; together the three lists tile the root box exactly.
#[derive(Debug, Clone, Default)]
pub struct CoverReport {
    pub certified: Vec<IBox3>,
    pub unresolved: Vec<IBox3>,
    pub failed: Vec<IBox3>,
}

impl CoverReport {
    pub fn merge(&mut self, mut other: CoverReport) {
        self.certified.append(&mut other.certified);
        self.unresolved.append(&mut other.unresolved);
        self.failed.append(&mut other.failed);
    }
}

/// Adaptive octant subdivision with a boolean predicate.
///
/// `predicate(leaf) == true` certifies the leaf; `false` is inconclusive and
/// triggers a split. Unresolved leaves at `max_depth` (or at f64 resolution)
/// are reported, never dropped: the certified and unresolved lists together
/// cover the root box exactly.
pub fn subdivide<F>(root: &IBox3, predicate: &F, max_depth: u32) -> CoverReport
where
    F: Fn(&IBox3) -> bool,
{
    subdivide_verdict(
        root,
        &|b| {
            if predicate(b) {
                LeafVerdict::Certified
            } else {
                LeafVerdict::Unknown
            }
        },
        max_depth,
    )
}

/// Adaptive octant subdivision with a three-way verdict predicate.
///
/// `Failed` leaves are recorded and not refined further; `Unknown` leaves are
/// split until the depth cap.
pub fn subdivide_verdict<F>(root: &IBox3, predicate: &F, max_depth: u32) -> CoverReport
where
    F: Fn(&IBox3) -> LeafVerdict,
{
    let mut report = CoverReport::default();
    recurse(root, predicate, max_depth, 0, &mut report);
    report
}

fn recurse<F>(b: &IBox3, predicate: &F, max_depth: u32, depth: u32, report: &mut CoverReport)
where
    F: Fn(&IBox3) -> LeafVerdict,
{
    match predicate(b) {
        LeafVerdict::Certified => report.certified.push(*b),
        LeafVerdict::Failed => report.failed.push(*b),
        LeafVerdict::Unknown => {
            if depth >= max_depth {
                report.unresolved.push(*b);
                return;
            }
            match b.split() {
                // Box at f64 resolution: cannot refine further.
                None => report.unresolved.push(*b),
                Some(children) => {
                    for child in &children {
                        recurse(child, predicate, max_depth, depth + 1, report);
                    }
                }
            }
        }
    }
}

//! The complete lattice of self-infimal sets over a simplicial cone.
//!
//! A lattice element is stored canonically as a finite antichain of generator
//! points `g₁, …, g_k` whose translated cones `⋃ (gᵢ + C)` form the upper
//! closure. The (usually infinite) infimal set itself is only ever queried
//! through [`Frontier::classify`] and [`Frontier::leq`]. `Bottom` stands for
//! `{−∞}` (upper closure is the whole space) and `Top` for `{+∞}` (empty
//! upper closure).
//!
//! Supremal sets use the mirrored representation: lower closures
//! `⋃ (gᵢ − C)`, antichain with respect to `−C`.

use std::fmt;
use std::sync::Arc;

use num::Signed;

use crate::cone::{self, SimplicialCone};
use crate::error::{check_dim, Error, Result};
use crate::rational::{self, format_vector, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtPoint {
    MinusInfinity,
    Finite(Vector),
    PlusInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Infimal sets, compared through upper closures.
    Inf,
    /// Supremal sets, compared through lower closures.
    Sup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrontierKind {
    /// `{−∞}`
    Bottom,
    /// `{+∞}`
    Top,
    /// Sorted, duplicate-free antichain of generators.
    Proper(Vec<Vector>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    OnFrontier,
    Above,
    Below,
}

#[derive(Clone, Debug)]
pub struct Frontier {
    cone: Arc<SimplicialCone>,
    orientation: Orientation,
    kind: FrontierKind,
    /// Cone coordinates of the generators, parallel to the generator list.
    coords: Vec<Vector>,
}

impl PartialEq for Frontier {
    fn eq(&self, other: &Self) -> bool {
        self.orientation == other.orientation && self.kind == other.kind && self.cone == other.cone
    }
}

impl Eq for Frontier {}

impl Frontier {
    pub fn bottom(cone: &Arc<SimplicialCone>, orientation: Orientation) -> Self {
        Self::special(cone, orientation, FrontierKind::Bottom)
    }

    pub fn top(cone: &Arc<SimplicialCone>, orientation: Orientation) -> Self {
        Self::special(cone, orientation, FrontierKind::Top)
    }

    fn special(cone: &Arc<SimplicialCone>, orientation: Orientation, kind: FrontierKind) -> Self {
        Self { cone: Arc::clone(cone), orientation, kind, coords: Vec::new() }
    }

    /// `Inf A` for a set of extended points.
    pub fn infimum(cone: &Arc<SimplicialCone>, points: &[ExtPoint]) -> Result<Self> {
        Self::from_ext(cone, points, Orientation::Inf)
    }

    /// `Sup A` for a set of extended points.
    pub fn supremum(cone: &Arc<SimplicialCone>, points: &[ExtPoint]) -> Result<Self> {
        Self::from_ext(cone, points, Orientation::Sup)
    }

    /// `Inf A` for finitely many points of `Y`; the empty set gives `Top`.
    pub fn inf_of(cone: &Arc<SimplicialCone>, points: &[Vector]) -> Result<Self> {
        Self::from_finite(cone, points.to_vec(), Orientation::Inf)
    }

    /// `Sup A` for finitely many points of `Y`; the empty set gives `Bottom`.
    pub fn sup_of(cone: &Arc<SimplicialCone>, points: &[Vector]) -> Result<Self> {
        Self::from_finite(cone, points.to_vec(), Orientation::Sup)
    }

    fn from_ext(cone: &Arc<SimplicialCone>, points: &[ExtPoint], orientation: Orientation) -> Result<Self> {
        // The absorbing infinity for Inf is −∞, for Sup it is +∞.
        let (absorbing, neutral) = match orientation {
            Orientation::Inf => (ExtPoint::MinusInfinity, ExtPoint::PlusInfinity),
            Orientation::Sup => (ExtPoint::PlusInfinity, ExtPoint::MinusInfinity),
        };
        let mut finite = Vec::new();
        let mut absorbed = false;
        for p in points {
            match p {
                ExtPoint::Finite(v) => {
                    check_dim(cone.dim(), v.len())?;
                    finite.push(v.clone());
                }
                p if *p == absorbing => absorbed = true,
                p => debug_assert_eq!(*p, neutral),
            }
        }
        if absorbed {
            return Ok(match orientation {
                Orientation::Inf => Self::bottom(cone, orientation),
                Orientation::Sup => Self::top(cone, orientation),
            });
        }
        Self::from_finite(cone, finite, orientation)
    }

    fn from_finite(cone: &Arc<SimplicialCone>, points: Vec<Vector>, orientation: Orientation) -> Result<Self> {
        if points.is_empty() {
            return Ok(match orientation {
                Orientation::Inf => Self::top(cone, orientation),
                Orientation::Sup => Self::bottom(cone, orientation),
            });
        }
        let mut with_coords = Vec::with_capacity(points.len());
        for p in points {
            let z = cone.coords(&p)?;
            with_coords.push((p, z));
        }
        Ok(Self::proper_pruned(cone, orientation, with_coords))
    }

    fn proper_pruned(cone: &Arc<SimplicialCone>, orientation: Orientation, pts: Vec<(Vector, Vector)>) -> Self {
        let (gens, coords) = prune(orientation, pts).into_iter().unzip();
        Self { cone: Arc::clone(cone), orientation, kind: FrontierKind::Proper(gens), coords }
    }

    /// Builds a proper element without dominance pruning. Only for mutation
    /// testing of the law suites; the result is generally not canonical.
    #[doc(hidden)]
    pub fn unpruned(cone: &Arc<SimplicialCone>, points: &[Vector]) -> Result<Self> {
        if points.is_empty() {
            return Ok(Self::top(cone, Orientation::Inf));
        }
        let mut pts = Vec::with_capacity(points.len());
        for p in points {
            pts.push((p.clone(), cone.coords(p)?));
        }
        pts.sort();
        pts.dedup();
        let (gens, coords) = pts.into_iter().unzip();
        Ok(Self { cone: Arc::clone(cone), orientation: Orientation::Inf, kind: FrontierKind::Proper(gens), coords })
    }

    pub fn cone(&self) -> &Arc<SimplicialCone> {
        &self.cone
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn kind(&self) -> &FrontierKind {
        &self.kind
    }

    pub fn is_bottom(&self) -> bool {
        self.kind == FrontierKind::Bottom
    }

    pub fn is_top(&self) -> bool {
        self.kind == FrontierKind::Top
    }

    pub fn generators(&self) -> Option<&[Vector]> {
        match &self.kind {
            FrontierKind::Proper(g) => Some(g),
            _ => None,
        }
    }

    pub(crate) fn generator_coords(&self) -> &[Vector] {
        &self.coords
    }

    fn proper_generators(&self) -> Result<&[Vector]> {
        self.generators().ok_or_else(|| Error::input("operation requires a proper lattice element"))
    }

    /// Classifies `y` against a proper infimal element.
    pub fn classify(&self, y: &[Rational]) -> Result<PointClass> {
        if self.orientation != Orientation::Inf {
            return Err(Error::input("classify_point expects an infimal element"));
        }
        self.proper_generators()?;
        let zy = self.cone.coords(y)?;
        let mut on_boundary = false;
        for zg in &self.coords {
            if cone::coords_dominate_strictly(&zy, zg) {
                return Ok(PointClass::Above);
            }
            on_boundary |= cone::coords_dominate(&zy, zg);
        }
        Ok(if on_boundary { PointClass::OnFrontier } else { PointClass::Below })
    }

    /// Membership in the upper closure (lower closure for supremal elements).
    pub fn closure_contains(&self, y: &[Rational]) -> Result<bool> {
        check_dim(self.cone.dim(), y.len())?;
        Ok(match (&self.kind, self.orientation) {
            (FrontierKind::Bottom, Orientation::Inf) | (FrontierKind::Top, Orientation::Sup) => true,
            (FrontierKind::Top, Orientation::Inf) | (FrontierKind::Bottom, Orientation::Sup) => false,
            (FrontierKind::Proper(_), o) => {
                let zy = self.cone.coords(y)?;
                self.coords.iter().any(|zg| match o {
                    Orientation::Inf => cone::coords_dominate(&zy, zg),
                    Orientation::Sup => cone::coords_dominate(zg, &zy),
                })
            }
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.orientation != other.orientation {
            return Err(Error::input("orientation mismatch"));
        }
        if self.cone != other.cone {
            return Err(Error::input("cone mismatch"));
        }
        Ok(())
    }

    /// The lattice order `self ≼ other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(match (&self.kind, &other.kind) {
            (FrontierKind::Bottom, _) | (_, FrontierKind::Top) => true,
            (_, FrontierKind::Bottom) | (FrontierKind::Top, _) => false,
            (FrontierKind::Proper(_), FrontierKind::Proper(_)) => match self.orientation {
                // Cl₊ other ⊆ Cl₊ self
                Orientation::Inf => {
                    other.coords.iter().all(|zb| self.coords.iter().any(|za| cone::coords_dominate(zb, za)))
                }
                // Cl₋ self ⊆ Cl₋ other
                Orientation::Sup => {
                    self.coords.iter().all(|za| other.coords.iter().any(|zb| cone::coords_dominate(zb, za)))
                }
            },
        })
    }

    /// `Inf(self + other)` with inf-addition: `Top` absorbs everything,
    /// then `Bottom` absorbs proper elements.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        self.require_inf("add")?;
        Ok(match (&self.kind, &other.kind) {
            (FrontierKind::Top, _) | (_, FrontierKind::Top) => Self::top(&self.cone, Orientation::Inf),
            (FrontierKind::Bottom, _) | (_, FrontierKind::Bottom) => Self::bottom(&self.cone, Orientation::Inf),
            (FrontierKind::Proper(a), FrontierKind::Proper(b)) => {
                let mut pts = Vec::with_capacity(a.len() * b.len());
                for (ga, za) in a.iter().zip(&self.coords) {
                    for (gb, zb) in b.iter().zip(&other.coords) {
                        pts.push((rational::add(ga, gb), rational::add(za, zb)));
                    }
                }
                Self::proper_pruned(&self.cone, Orientation::Inf, pts)
            }
        })
    }

    pub fn scale(&self, alpha: &Rational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::input("scaling factor must be positive"));
        }
        Ok(match &self.kind {
            FrontierKind::Proper(g) => {
                let pts = g
                    .iter()
                    .zip(&self.coords)
                    .map(|(p, z)| (rational::scaled(p, alpha), rational::scaled(z, alpha)))
                    .collect();
                Self::proper_pruned(&self.cone, self.orientation, pts)
            }
            _ => self.clone(),
        })
    }

    /// Translates every generator by `v`.
    pub fn translate(&self, v: &[Rational]) -> Result<Self> {
        check_dim(self.cone.dim(), v.len())?;
        Ok(match &self.kind {
            FrontierKind::Proper(g) => {
                let zv = self.cone.coords(v)?;
                let pts =
                    g.iter().zip(&self.coords).map(|(p, z)| (rational::add(p, v), rational::add(z, &zv))).collect();
                Self::proper_pruned(&self.cone, self.orientation, pts)
            }
            _ => self.clone(),
        })
    }

    fn require_inf(&self, op: &str) -> Result<()> {
        if self.orientation == Orientation::Inf {
            Ok(())
        } else {
            Err(Error::input(format!("{op} is defined for infimal elements only")))
        }
    }

    /// Negation mirror: `−Inf A = Sup(−A)` with respect to the same cone.
    pub fn negated(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Inf => Orientation::Sup,
            Orientation::Sup => Orientation::Inf,
        };
        let kind = match &self.kind {
            FrontierKind::Bottom => FrontierKind::Top,
            FrontierKind::Top => FrontierKind::Bottom,
            FrontierKind::Proper(g) => {
                let pts: Vec<(Vector, Vector)> = g.iter().zip(&self.coords).map(|(p, z)| (neg(p), neg(z))).collect();
                return Self::proper_pruned(&self.cone, orientation, pts);
            }
        };
        Self::special(&self.cone, orientation, kind)
    }
}

/// Sorts, deduplicates and drops every point dominated by another one.
/// Points are `(y, M⁻¹y)` pairs.
fn prune(orientation: Orientation, mut pts: Vec<(Vector, Vector)>) -> Vec<(Vector, Vector)> {
    pts.sort();
    pts.dedup();
    let keep: Vec<bool> = (0..pts.len())
        .map(|i| {
            !(0..pts.len()).any(|j| {
                j != i
                    && match orientation {
                        Orientation::Inf => cone::coords_dominate(&pts[i].1, &pts[j].1),
                        Orientation::Sup => cone::coords_dominate(&pts[j].1, &pts[i].1),
                    }
            })
        })
        .collect();
    pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

fn neg(v: &[Rational]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// `Inf` of the finite points of an extended point set.
pub fn infer_from_points(points: &[ExtPoint], cone: &Arc<SimplicialCone>) -> Result<Frontier> {
    Frontier::infimum(cone, points)
}

pub fn sup_from_points(points: &[ExtPoint], cone: &Arc<SimplicialCone>) -> Result<Frontier> {
    Frontier::supremum(cone, points)
}

pub fn classify_point(s: &Frontier, y: &[Rational]) -> Result<PointClass> {
    s.classify(y)
}

/// The lattice infimum of a nonempty family of infimal elements.
pub fn inf_family(family: &[Frontier]) -> Result<Frontier> {
    let first = family.first().ok_or_else(|| Error::input("inf_family of an empty family"))?;
    first.require_inf("inf_family")?;
    let mut pts = Vec::new();
    for f in family {
        first.check_compatible(f)?;
        match &f.kind {
            FrontierKind::Bottom => return Ok(Frontier::bottom(&first.cone, Orientation::Inf)),
            FrontierKind::Top => {}
            FrontierKind::Proper(g) => pts.extend(g.iter().cloned().zip(f.coords.iter().cloned())),
        }
    }
    if pts.is_empty() {
        return Ok(Frontier::top(&first.cone, Orientation::Inf));
    }
    Ok(Frontier::proper_pruned(&first.cone, Orientation::Inf, pts))
}

/// The lattice supremum of a nonempty family of infimal elements, computed
/// as the frontier of the intersection of the upper closures.
pub fn sup_family(family: &[Frontier]) -> Result<Frontier> {
    let first = family.first().ok_or_else(|| Error::input("sup_family of an empty family"))?;
    first.require_inf("sup_family")?;
    let mut acc: Option<Vec<(Vector, Vector)>> = None;
    for f in family {
        first.check_compatible(f)?;
        match &f.kind {
            FrontierKind::Top => return Ok(Frontier::top(&first.cone, Orientation::Inf)),
            FrontierKind::Bottom => {}
            FrontierKind::Proper(_) => {
                acc = Some(match acc {
                    None => f.generators().unwrap().iter().cloned().zip(f.coords.iter().cloned()).collect(),
                    Some(cur) => {
                        let mut next = Vec::with_capacity(cur.len() * f.coords.len());
                        for (_, za) in &cur {
                            for zb in &f.coords {
                                let j = cone::join_coords(za, zb);
                                next.push((first.cone.from_coords(&j), j));
                            }
                        }
                        prune(Orientation::Inf, next)
                    }
                });
            }
        }
    }
    Ok(match acc {
        None => Frontier::bottom(&first.cone, Orientation::Inf),
        Some(pts) => Frontier::proper_pruned(&first.cone, Orientation::Inf, pts),
    })
}

/// Weakly minimal elements of a finite set: `wMin A = A ∩ Inf A`.
pub fn wmin_points(points: &[Vector], cone: &Arc<SimplicialCone>) -> Result<Vec<Vector>> {
    let inf = Frontier::inf_of(cone, points)?;
    let mut out = Vec::new();
    for p in points {
        if inf.classify(p)? == PointClass::OnFrontier && !out.contains(p) {
            out.push(p.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Whether a generator list is a `C`-antichain (for `Inf`) or `−C`-antichain
/// (for `Sup`); both are the same pairwise condition on distinct points.
pub fn is_antichain(cone: &SimplicialCone, points: &[Vector]) -> Result<bool> {
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            if i != j && cone::dominates(cone, a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl fmt::Display for Frontier {
    /// Canonical text: `INF {(0,1),(1,0)}`, `SUP {(2,2)}`, `BOTTOM`, `TOP`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FrontierKind::Bottom => write!(f, "BOTTOM"),
            FrontierKind::Top => write!(f, "TOP"),
            FrontierKind::Proper(g) => {
                let tag = match self.orientation {
                    Orientation::Inf => "INF",
                    Orientation::Sup => "SUP",
                };
                write!(f, "{tag} {}", format_point_set(g))
            }
        }
    }
}

pub fn format_point_set(points: &[Vector]) -> String {
    let inner: Vec<String> = points.iter().map(|p| format_vector(p)).collect();
    format!("{{{}}}", inner.join(","))
}

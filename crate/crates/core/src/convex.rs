//! The convex regime: convexified finite instances, their exact planar
//! primal value, LP-based dual synthesis and finite strong-duality
//! certificates.
//!
//! Values here live in a second representation, [`HullFrontier`], whose
//! upper closure is `conv(V) + C` for a finite vertex list `V`. Only `q = 2`
//! is supported exactly. In cone coordinates the closure is an upward-closed
//! convex polygon whose lower-left boundary is a convex chain running from
//! the leftmost vertex down to the lowest one.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::SimplicialCone;
use crate::duality::{embed_operator, PositiveOperator};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{Frontier, FrontierKind, Orientation, PointClass};
use crate::linalg;
use crate::lp::{lp_solve, lp_solve_nonneg, LpOutcome, Sense};
use crate::problem::Instance;
use crate::rational::{self, dot, format_rational, format_vector, int, Rational, Vector};

const EXACT_ONLY: &str = "exact certification requires q=2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullKind {
    Bottom,
    Top,
    /// Vertices of the lower-left chain, by increasing first cone coordinate.
    Proper(Vec<Vector>),
}

#[derive(Clone, Debug)]
pub struct HullFrontier {
    cone: Arc<SimplicialCone>,
    kind: HullKind,
    coords: Vec<Vector>,
}

impl PartialEq for HullFrontier {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.cone == other.cone
    }
}

impl Eq for HullFrontier {}

/// `w·z ≥ b` in cone coordinates.
#[derive(Clone, Debug)]
struct Halfspace {
    w: Vector,
    b: Rational,
}

impl Halfspace {
    fn slack(&self, z: &[Rational]) -> Rational {
        dot(&self.w, z) - &self.b
    }
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Lower-left convex chain of `conv(points) + ℝ²₊`, strict turns only.
fn lower_left_chain(mut pts: Vec<Vector>) -> Vec<Vector> {
    pts.sort();
    pts.dedup();
    let Some(min_z2) = pts.iter().map(|p| p[1].clone()).min() else {
        return pts;
    };
    let mut hull: Vec<Vector> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p).is_positive() {
            hull.pop();
        }
        hull.push(p);
    }
    let end = hull.iter().position(|p| p[1] == min_z2).expect("lowest point is on the lower hull");
    hull.truncate(end + 1);
    hull
}

impl HullFrontier {
    fn require_planar(cone: &SimplicialCone) -> Result<()> {
        if cone.dim() == 2 {
            Ok(())
        } else {
            Err(Error::Unsupported(EXACT_ONLY.into()))
        }
    }

    pub fn bottom(cone: &Arc<SimplicialCone>) -> Result<Self> {
        Self::require_planar(cone)?;
        Ok(Self { cone: Arc::clone(cone), kind: HullKind::Bottom, coords: Vec::new() })
    }

    pub fn top(cone: &Arc<SimplicialCone>) -> Result<Self> {
        Self::require_planar(cone)?;
        Ok(Self { cone: Arc::clone(cone), kind: HullKind::Top, coords: Vec::new() })
    }

    /// The element with upper closure `conv(points) + C`; `Top` when empty.
    pub fn from_points(cone: &Arc<SimplicialCone>, points: &[Vector]) -> Result<Self> {
        Self::require_planar(cone)?;
        let coords = points.iter().map(|p| cone.coords(p)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coords(cone, coords))
    }

    fn from_coords(cone: &Arc<SimplicialCone>, coords: Vec<Vector>) -> Self {
        if coords.is_empty() {
            return Self { cone: Arc::clone(cone), kind: HullKind::Top, coords };
        }
        let chain = lower_left_chain(coords);
        let vertices = chain.iter().map(|z| cone.from_coords(z)).collect();
        Self { cone: Arc::clone(cone), kind: HullKind::Proper(vertices), coords: chain }
    }

    /// Convex hull of an antichain element: `conv(Cl₊ F)`.
    pub fn hull_of(f: &Frontier) -> Result<Self> {
        match f.kind() {
            FrontierKind::Bottom => Self::bottom(f.cone()),
            FrontierKind::Top => Self::top(f.cone()),
            FrontierKind::Proper(g) => Self::from_points(f.cone(), g),
        }
    }

    pub fn cone(&self) -> &Arc<SimplicialCone> {
        &self.cone
    }

    pub fn kind(&self) -> &HullKind {
        &self.kind
    }

    pub fn is_bottom(&self) -> bool {
        self.kind == HullKind::Bottom
    }

    pub fn is_top(&self) -> bool {
        self.kind == HullKind::Top
    }

    pub fn vertices(&self) -> Option<&[Vector]> {
        match &self.kind {
            HullKind::Proper(v) => Some(v),
            _ => None,
        }
    }

    /// Irredundant inequality description of the upper closure.
    fn halfspaces(&self) -> Vec<Halfspace> {
        let z = &self.coords;
        let Some((first, last)) = z.first().zip(z.last()) else {
            return Vec::new();
        };
        let mut hs = vec![
            Halfspace { w: vec![int(1), int(0)], b: first[0].clone() },
            Halfspace { w: vec![int(0), int(1)], b: last[1].clone() },
        ];
        for e in z.windows(2) {
            let w = edge_normal(&e[0], &e[1]);
            let b = dot(&w, &e[0]);
            hs.push(Halfspace { w, b });
        }
        hs
    }

    /// Outer edge normals of the chain in cone coordinates, each paired with
    /// the chain indices of its endpoints. The two cone facets come first.
    fn facets(&self) -> Vec<(Vector, Vec<usize>)> {
        let n = self.coords.len();
        if n == 0 {
            return Vec::new();
        }
        let mut out = vec![(vec![int(1), int(0)], vec![0]), (vec![int(0), int(1)], vec![n - 1])];
        for i in 0..n - 1 {
            out.push((edge_normal(&self.coords[i], &self.coords[i + 1]), vec![i, i + 1]));
        }
        out
    }

    fn contains_coords(&self, z: &[Rational]) -> bool {
        match self.kind {
            HullKind::Bottom => true,
            HullKind::Top => false,
            HullKind::Proper(_) => self.halfspaces().iter().all(|h| !h.slack(z).is_negative()),
        }
    }

    pub fn closure_contains(&self, y: &[Rational]) -> Result<bool> {
        Ok(self.contains_coords(&self.cone.coords(y)?))
    }

    pub fn classify(&self, y: &[Rational]) -> Result<PointClass> {
        if self.vertices().is_none() {
            return Err(Error::input("classify_point requires a proper lattice element"));
        }
        let z = self.cone.coords(y)?;
        let slacks: Vec<Rational> = self.halfspaces().iter().map(|h| h.slack(&z)).collect();
        Ok(if slacks.iter().any(Signed::is_negative) {
            PointClass::Below
        } else if slacks.iter().all(Signed::is_positive) {
            PointClass::Above
        } else {
            PointClass::OnFrontier
        })
    }

    fn check_cone(&self, other: &SimplicialCone) -> Result<()> {
        if *self.cone == *other {
            Ok(())
        } else {
            Err(Error::input("cone mismatch"))
        }
    }

    /// `self ≼ other`, i.e. `Cl₊ other ⊆ Cl₊ self`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_cone(&other.cone)?;
        Ok(match (&self.kind, &other.kind) {
            (HullKind::Bottom, _) | (_, HullKind::Top) => true,
            (_, HullKind::Bottom) | (HullKind::Top, _) => false,
            _ => other.coords.iter().all(|z| self.contains_coords(z)),
        })
    }

    /// `self ≼ other` against an antichain element.
    pub fn leq_frontier(&self, other: &Frontier) -> Result<bool> {
        self.check_cone(other.cone())?;
        if other.orientation() != Orientation::Inf {
            return Err(Error::input("orientation mismatch"));
        }
        Ok(match (&self.kind, other.kind()) {
            (HullKind::Bottom, _) | (_, FrontierKind::Top) => true,
            (_, FrontierKind::Bottom) | (HullKind::Top, _) => false,
            _ => other.generator_coords().iter().all(|z| self.contains_coords(z)),
        })
    }

    /// `other ≼ self` for an antichain `other`: the whole chain of `self`,
    /// edges included, must lie in the union of translated cones.
    pub fn geq_frontier(&self, other: &Frontier) -> Result<bool> {
        self.check_cone(other.cone())?;
        if other.orientation() != Orientation::Inf {
            return Err(Error::input("orientation mismatch"));
        }
        Ok(match (other.kind(), &self.kind) {
            (FrontierKind::Bottom, _) | (_, HullKind::Top) => true,
            (_, HullKind::Bottom) | (FrontierKind::Top, _) => false,
            _ => {
                let gens = other.generator_coords();
                let n = self.coords.len();
                (0..n).all(|i| gens.iter().any(|g| crate::cone::coords_dominate(&self.coords[i], g)))
                    && self.coords.windows(2).all(|e| segment_covered(&e[0], &e[1], gens))
            }
        })
    }

    /// Minimum of `⟨ℓ, y⟩` over the upper closure, for `ℓ ∈ −C°`.
    pub fn support_value(&self, ell: &[Rational]) -> Result<Option<Rational>> {
        check_dim(2, ell.len())?;
        Ok(self.vertices().map(|v| v.iter().map(|p| dot(ell, p)).min().expect("nonempty chain")))
    }
}

fn edge_normal(a: &[Rational], b: &[Rational]) -> Vector {
    vec![&a[1] - &b[1], &b[0] - &a[0]]
}

/// Whether the segment `[a, b]` lies in `⋃ (gᵢ + ℝ²₊)` (cone coordinates).
fn segment_covered(a: &[Rational], b: &[Rational], gens: &[Vector]) -> bool {
    let d = rational::sub(b, a);
    let mut intervals: Vec<(Rational, Rational)> = Vec::new();
    for g in gens {
        let (mut lo, mut hi) = (int(0), int(1));
        let mut empty = false;
        for i in 0..2 {
            let gap = &g[i] - &a[i];
            match d[i].cmp(&int(0)) {
                Ordering::Equal => empty |= gap.is_positive(),
                Ordering::Greater => lo = lo.max(gap / &d[i]),
                Ordering::Less => hi = hi.min(gap / &d[i]),
            }
        }
        if !empty && lo <= hi {
            intervals.push((lo, hi));
        }
    }
    intervals.sort();
    let mut reach = int(0);
    let mut started = false;
    for (lo, hi) in intervals {
        if lo > reach {
            return false;
        }
        started = true;
        reach = reach.max(hi);
    }
    started && reach >= int(1)
}

/// Lattice supremum of hull elements: the frontier of the intersection of
/// the upper closures.
pub fn hull_sup_family(family: &[HullFrontier]) -> Result<HullFrontier> {
    let first = family.first().ok_or_else(|| Error::input("sup_family of an empty family"))?;
    let mut hs = Vec::new();
    for f in family {
        f.check_cone(&first.cone)?;
        match f.kind {
            HullKind::Top => return HullFrontier::top(&first.cone),
            HullKind::Bottom => {}
            HullKind::Proper(_) => hs.extend(f.halfspaces()),
        }
    }
    if hs.is_empty() {
        return HullFrontier::bottom(&first.cone);
    }
    let mut candidates = Vec::new();
    for (i, h1) in hs.iter().enumerate() {
        for h2 in &hs[i + 1..] {
            let m = vec![h1.w.clone(), h2.w.clone()];
            if let Some(z) = linalg::solve(&m, &[h1.b.clone(), h2.b.clone()]) {
                if hs.iter().all(|h| !h.slack(&z).is_negative()) {
                    candidates.push(z);
                }
            }
        }
    }
    Ok(HullFrontier::from_coords(&first.cone, candidates))
}

/// Lattice infimum of hull elements: the hull of the union.
pub fn hull_inf_family(family: &[HullFrontier]) -> Result<HullFrontier> {
    let first = family.first().ok_or_else(|| Error::input("inf_family of an empty family"))?;
    let mut coords = Vec::new();
    for f in family {
        f.check_cone(&first.cone)?;
        match f.kind {
            HullKind::Bottom => return HullFrontier::bottom(&first.cone),
            HullKind::Top => {}
            HullKind::Proper(_) => coords.extend(f.coords.iter().cloned()),
        }
    }
    Ok(HullFrontier::from_coords(&first.cone, coords))
}

impl fmt::Display for HullFrontier {
    /// Canonical text: `CONV {(0,1),(1,0)}`, `BOTTOM`, `TOP`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            HullKind::Bottom => write!(f, "BOTTOM"),
            HullKind::Top => write!(f, "TOP"),
            HullKind::Proper(v) => write!(f, "CONV {}", crate::lattice::format_point_set(v)),
        }
    }
}

/// A finite instance together with the vertex pairs `(f, g)` whose convex
/// hull is the convexified graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexifiedInstance {
    base: Instance,
    vertices: Vec<(Vector, Vector)>,
}

impl ConvexifiedInstance {
    pub fn base(&self) -> &Instance {
        &self.base
    }

    pub fn vertices(&self) -> &[(Vector, Vector)] {
        &self.vertices
    }
}

pub fn convexify(inst: &Instance) -> Result<ConvexifiedInstance> {
    let mut vertices: Vec<(Vector, Vector)> = Vec::new();
    for d in inst.decisions() {
        for f in &d.f {
            for g in &d.g {
                let pair = (f.clone(), g.clone());
                if !vertices.contains(&pair) {
                    vertices.push(pair);
                }
            }
        }
    }
    if vertices.is_empty() {
        return Err(Error::input("no decision has both F and G values"));
    }
    Ok(ConvexifiedInstance { base: inst.clone(), vertices })
}

/// The weight polytope `Λ = {λ ≥ 0, Σλ = 1, Σλᵢgᵢ ∈ −D}` with the cone
/// coordinates of every `fᵢ`.
struct WeightPolytope {
    a: Vec<Vector>,
    b: Vector,
    fz: Vec<Vector>,
}

impl WeightPolytope {
    fn new(cv: &ConvexifiedInstance) -> Result<Self> {
        let inst = &cv.base;
        let k = cv.vertices.len();
        let mut a = Vec::new();
        let mut b = Vec::new();
        a.push(vec![int(1); k]);
        b.push(int(1));
        a.push(vec![int(-1); k]);
        b.push(int(-1));
        let gz = cv.vertices.iter().map(|(_, g)| inst.cone_d().coords(g)).collect::<Result<Vec<_>>>()?;
        for r in 0..inst.m() {
            a.push(gz.iter().map(|z| z[r].clone()).collect());
            b.push(int(0));
        }
        let fz = cv.vertices.iter().map(|(f, _)| inst.cone_c().coords(f)).collect::<Result<Vec<_>>>()?;
        Ok(Self { a, b, fz })
    }

    fn objective(&self, w: &[Rational]) -> Vector {
        self.fz.iter().map(|z| dot(w, z)).collect()
    }

    fn image(&self, lambda: &[Rational]) -> Vector {
        let dim = self.fz[0].len();
        let mut z = vec![int(0); dim];
        for (l, f) in lambda.iter().zip(&self.fz) {
            if !l.is_zero() {
                z = rational::add(&z, &rational::scaled(f, l));
            }
        }
        z
    }

    /// Minimizes `w·z(λ)` subject to `Λ` and optional extra rows. `None`
    /// when `Λ` is empty.
    fn minimize(&self, w: &[Rational], extra: &[(Vector, Rational)]) -> Result<Option<(Vector, Rational)>> {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        for (row, rhs) in extra {
            a.push(self.objective(row));
            b.push(rhs.clone());
        }
        match lp_solve_nonneg(&a, &b, &self.objective(w), Sense::Minimize)? {
            LpOutcome::Optimal { point, value } => Ok(Some((self.image(&point), value))),
            LpOutcome::Infeasible => Ok(None),
            LpOutcome::Unbounded => Err(Error::Verification("weight polytope LP is unbounded".into())),
        }
    }

    /// Lexicographic minimum of `(w1·z, w2·z)`.
    fn lexmin(&self, w1: &[Rational], w2: &[Rational]) -> Result<Option<Vector>> {
        let Some((_, v1)) = self.minimize(w1, &[])? else {
            return Ok(None);
        };
        Ok(self.minimize(w2, &[(w1.to_vec(), v1)])?.map(|(z, _)| z))
    }
}

/// Infimal value of the convexified problem, exact for `q = 2`.
pub fn primal_value_conv(cv: &ConvexifiedInstance) -> Result<HullFrontier> {
    let cone = cv.base.cone_c();
    HullFrontier::require_planar(cone)?;
    let poly = WeightPolytope::new(cv)?;
    let (e1, e2) = (vec![int(1), int(0)], vec![int(0), int(1)]);
    let Some(a) = poly.lexmin(&e1, &e2)? else {
        return HullFrontier::top(cone);
    };
    let b = poly.lexmin(&e2, &e1)?.expect("Λ is nonempty");
    let mut chain = vec![a.clone()];
    if a != b {
        dichotomy(&poly, &a, &b, &mut chain)?;
        chain.push(b);
    }
    Ok(HullFrontier::from_coords(cone, chain))
}

/// Appends the chain vertices strictly between `a` and `b`, in order.
fn dichotomy(poly: &WeightPolytope, a: &Vector, b: &Vector, out: &mut Vec<Vector>) -> Result<()> {
    let w = edge_normal(a, b);
    let (p, value) = poly.minimize(&w, &[])?.expect("Λ is nonempty");
    if value < dot(&w, a) {
        dichotomy(poly, a, &p, out)?;
        out.push(p.clone());
        dichotomy(poly, &p, b, out)?;
    }
    Ok(())
}

/// `φ(u*)` on the convexified instance.
pub fn phi_conv(cv: &ConvexifiedInstance, u_star: &[Rational]) -> Result<HullFrontier> {
    let inst = &cv.base;
    check_dim(inst.m(), u_star.len())?;
    let cone = inst.cone_c();
    if !inst.cone_d().in_neg_polar(u_star)? {
        return HullFrontier::bottom(cone);
    }
    let pts: Vec<Vector> =
        cv.vertices.iter().map(|(f, g)| rational::add(f, &rational::scaled(inst.c(), &dot(u_star, g)))).collect();
    HullFrontier::from_points(cone, &pts)
}

/// `Φ(T)` on the convexified instance.
pub fn phi_op_conv(cv: &ConvexifiedInstance, op: &PositiveOperator) -> Result<HullFrontier> {
    let pts: Vec<Vector> = cv.vertices.iter().map(|(f, g)| rational::add(f, &op.apply(g))).collect();
    HullFrontier::from_points(cv.base.cone_c(), &pts)
}

/// A normal `y* ∈ C° ∖ {0}` scaled to `⟨y*, c⟩ = −1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarizationNormal {
    y_star: Vector,
}

impl ScalarizationNormal {
    pub fn new(y_star: Vector, inst: &Instance) -> Result<Self> {
        check_dim(inst.q(), y_star.len())?;
        if rational::is_zero_vector(&y_star) {
            return Err(Error::input("normal must be nonzero"));
        }
        if inst.cone_c().generators().iter().any(|g| dot(&y_star, g).is_positive()) {
            return Err(Error::input(format!("{} is not in the polar cone of C", format_vector(&y_star))));
        }
        if dot(&y_star, inst.c()) != int(-1) {
            return Err(Error::input("normal must satisfy ⟨y*, c⟩ = −1"));
        }
        Ok(Self { y_star })
    }

    /// Scales `−M⁻ᵀw` for a nonnegative, nonzero cone-coordinate weight `w`.
    pub fn from_coord_weight(w: &[Rational], inst: &Instance) -> Result<Self> {
        let cone = inst.cone_c();
        check_dim(cone.dim(), w.len())?;
        let scale = dot(w, &cone.coords(inst.c())?);
        if !scale.is_positive() {
            return Err(Error::input("weight must be nonnegative and nonzero"));
        }
        let dir = linalg::mat_vec(&linalg::transpose(cone.inverse_matrix()), w);
        Self::new(dir.iter().map(|x| -x / &scale).collect(), inst)
    }

    pub fn y_star(&self) -> &Vector {
        &self.y_star
    }
}

/// Solves `max t s.t. t ≤ ⟨−y*, f⟩ + ⟨u*, g⟩` over all vertices and
/// `u* ∈ −D°`. Returns `(u*, t*)`.
pub fn synthesize_dual(cv: &ConvexifiedInstance, normal: &ScalarizationNormal) -> Result<(Vector, Rational)> {
    let inst = &cv.base;
    check_dim(inst.q(), normal.y_star.len())?;
    let m = inst.m();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (f, g) in &cv.vertices {
        let mut row = vec![int(1)];
        row.extend(g.iter().map(|x| -x));
        a.push(row);
        b.push(-dot(&normal.y_star, f));
    }
    for d in inst.cone_d().generators() {
        let mut row = vec![int(0)];
        row.extend(d.iter().map(|x| -x));
        a.push(row);
        b.push(int(0));
    }
    let mut obj = vec![int(0); m + 1];
    obj[0] = int(1);
    match lp_solve(&a, &b, &obj, Sense::Maximize)? {
        LpOutcome::Optimal { point, value } => Ok((point[1..].to_vec(), value)),
        LpOutcome::Unbounded => Err(Error::Verification("dual synthesis LP is unbounded".into())),
        LpOutcome::Infeasible => Err(Error::Verification("dual synthesis LP is infeasible".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    NotRefuted,
    Failed(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => write!(f, "Certified"),
            Verdict::NotRefuted => write!(f, "NotRefuted"),
            Verdict::Failed(r) => write!(f, "Failed({r:?})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCertificate {
    pub y_star: Vector,
    pub u_star: Vector,
    /// Optimal value of the synthesis LP.
    pub lp_value: Rational,
    /// Minimum of `⟨−y*, ·⟩` over the primal value.
    pub support_value: Rational,
    /// Primal frontier points supported by this normal.
    pub supported: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub duals: Vec<Vector>,
    pub facets: Vec<FacetCertificate>,
    /// Absent in heuristic mode.
    pub primal_conv: Option<HullFrontier>,
    pub dual_set_value: Option<HullFrontier>,
    pub operator_value: Option<HullFrontier>,
}

impl Certificate {
    fn failed(reason: &str) -> Self {
        Self {
            verdict: Verdict::Failed(reason.into()),
            duals: Vec::new(),
            facets: Vec::new(),
            primal_conv: None,
            dual_set_value: None,
            operator_value: None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_json(&self) -> String {
        let strs = |v: &Vector| v.iter().map(format_rational).collect::<Vec<_>>();
        let text = |h: &Option<HullFrontier>| h.as_ref().map(|h| h.to_string());
        let (verdict, reason) = match &self.verdict {
            Verdict::Certified => ("Certified", None),
            Verdict::NotRefuted => ("NotRefuted", None),
            Verdict::Failed(r) => ("Failed", Some(r.clone())),
        };
        let json = CertificateJson {
            verdict,
            reason,
            primal_conv: text(&self.primal_conv),
            dual_set_value: text(&self.dual_set_value),
            operator_value: text(&self.operator_value),
            duals: self.duals.iter().map(strs).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| FacetJson {
                    y_star: strs(&f.y_star),
                    u_star: strs(&f.u_star),
                    lp_value: format_rational(&f.lp_value),
                    support_value: format_rational(&f.support_value),
                    supported: f.supported.iter().map(strs).collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&json).expect("certificate serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Some(p) = &self.primal_conv {
            writeln!(f, "primal (convexified): {p}")?;
        }
        if let Some(d) = &self.dual_set_value {
            writeln!(f, "dual: {d}")?;
        }
        if let Some(o) = &self.operator_value {
            writeln!(f, "operator dual: {o}")?;
        }
        write!(f, "duals: {}", crate::duality::format_duals(&self.duals))
    }
}

#[derive(Serialize)]
struct CertificateJson {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    primal_conv: Option<String>,
    dual_set_value: Option<String>,
    operator_value: Option<String>,
    duals: Vec<Vec<String>>,
    facets: Vec<FacetJson>,
}

#[derive(Serialize)]
struct FacetJson {
    y_star: Vec<String>,
    u_star: Vec<String>,
    lp_value: String,
    support_value: String,
    supported: Vec<Vec<String>>,
}

fn push_unique(duals: &mut Vec<Vector>, u: &Vector) {
    if !duals.contains(u) {
        duals.push(u.clone());
    }
}

/// Exact strong-duality certificate for a planar convexified instance.
///
/// One dual is synthesized per facet normal of the primal upper closure,
/// the two facets inherited from `C` included. The dual value over those
/// duals is then compared with the primal value exactly.
pub fn certify_strong_duality(cv: &ConvexifiedInstance) -> Result<Certificate> {
    let inst = &cv.base;
    HullFrontier::require_planar(inst.cone_c())?;
    if !inst.slater_check() {
        return Ok(Certificate::failed("slater"));
    }
    let primal = primal_value_conv(cv)?;
    if primal.vertices().is_none() {
        return Err(Error::Verification(format!("Slater holds but the convexified primal value is {primal}")));
    }
    let mut facets = Vec::new();
    let mut duals = Vec::new();
    let mut values = Vec::new();
    for (w, idx) in primal.facets() {
        let normal = ScalarizationNormal::from_coord_weight(&w, inst)?;
        let (u_star, lp_value) = synthesize_dual(cv, &normal)?;
        if !inst.cone_d().in_neg_polar(&u_star)? {
            return Err(Error::Verification(format!("synthesized {} is not in −D°", format_vector(&u_star))));
        }
        let ell: Vector = normal.y_star.iter().map(|x| -x).collect();
        let support_value = primal.support_value(&ell)?.expect("proper primal value");
        let pairing_min =
            cv.vertices.iter().map(|(f, g)| dot(&ell, f) + dot(&u_star, g)).min().expect("nonempty vertices");
        if pairing_min != lp_value || lp_value != support_value {
            return Err(Error::Verification(format!(
                "scalar duality mismatch for y* = {}: LP {}, pairing {}, support {}",
                format_vector(&normal.y_star),
                format_rational(&lp_value),
                format_rational(&pairing_min),
                format_rational(&support_value)
            )));
        }
        let value = phi_conv(cv, &u_star)?;
        if !value.leq(&primal)? {
            return Err(Error::Verification(format!(
                "φ({}) = {value} exceeds primal {primal}",
                format_vector(&u_star)
            )));
        }
        let verts = primal.vertices().expect("proper primal value");
        let supported: Vec<Vector> = idx.iter().map(|&i| verts[i].clone()).collect();
        for y in &supported {
            if value.classify(y)? != PointClass::OnFrontier {
                return Err(Error::Verification(format!(
                    "supported point {} is not on the frontier of φ({})",
                    format_vector(y),
                    format_vector(&u_star)
                )));
            }
        }
        push_unique(&mut duals, &u_star);
        values.push(value);
        facets.push(FacetCertificate { y_star: normal.y_star, u_star, lp_value, support_value, supported });
    }
    let dual_set_value = hull_sup_family(&values)?;
    let ops = duals.iter().map(|u| embed_operator(inst, u)).collect::<Result<Vec<_>>>()?;
    let op_values = ops.iter().map(|t| phi_op_conv(cv, t)).collect::<Result<Vec<_>>>()?;
    let operator_value = hull_sup_family(&op_values)?;
    if !dual_set_value.leq(&operator_value)? || !operator_value.leq(&primal)? {
        return Err(Error::Verification("operator chain violated".into()));
    }
    let equal = dual_set_value == primal && operator_value == primal;
    Ok(Certificate {
        verdict: if equal {
            Verdict::Certified
        } else {
            Verdict::Failed("dual value differs from primal value".into())
        },
        duals,
        facets,
        primal_conv: Some(primal),
        dual_set_value: Some(dual_set_value),
        operator_value: Some(operator_value),
    })
}

/// Sampled-normal check for any `q`: the scalarized primal value of the
/// convexified problem must match the synthesized dual bound for every
/// sampled normal. The verdict is at best `NotRefuted`.
pub fn certify_heuristic(cv: &ConvexifiedInstance, samples: usize, seed: u64) -> Result<Certificate> {
    let inst = &cv.base;
    if !inst.slater_check() {
        return Ok(Certificate::failed("slater"));
    }
    let poly = WeightPolytope::new(cv)?;
    let q = inst.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<Vector> = (0..q)
        .map(|i| {
            let mut e = vec![int(0); q];
            e[i] = int(1);
            e
        })
        .collect();
    while weights.len() < samples.max(q) {
        let w: Vector = (0..q).map(|_| int(rng.gen_range(0..=4))).collect();
        if !rational::is_zero_vector(&w) && !weights.contains(&w) {
            weights.push(w);
        }
    }
    let mut facets = Vec::new();
    let mut duals = Vec::new();
    let mut verdict = Verdict::NotRefuted;
    for w in weights {
        let normal = ScalarizationNormal::from_coord_weight(&w, inst)?;
        let (u_star, lp_value) = synthesize_dual(cv, &normal)?;
        let Some((z, _)) = poly.minimize(&w, &[])? else {
            return Err(Error::Verification("Slater holds but the convexified problem is infeasible".into()));
        };
        let point = inst.cone_c().from_coords(&z);
        let ell: Vector = normal.y_star.iter().map(|x| -x).collect();
        let support_value = dot(&ell, &point);
        if support_value != lp_value && verdict == Verdict::NotRefuted {
            verdict = Verdict::Failed(format!("scalar gap for y* = {}", format_vector(&normal.y_star)));
        }
        push_unique(&mut duals, &u_star);
        facets.push(FacetCertificate {
            y_star: normal.y_star,
            u_star,
            lp_value,
            support_value,
            supported: vec![point],
        });
    }
    Ok(Certificate { verdict, duals, facets, primal_conv: None, dual_set_value: None, operator_value: None })
}

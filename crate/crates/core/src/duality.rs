//! Lagrange duality for finite set-valued problems.
//!
//! Dual variables `u*` are plain vectors of `U* = ℝ^m`; operator duals are
//! `q×m` matrices `T` with `T(D) ⊆ C`. All dual values are taken over
//! explicit finite dual sets, so they are lower bounds of the true dual
//! values and, by weak duality, of the primal value.

use std::fmt;

use rayon::prelude::*;

use crate::cone::SimplicialCone;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{inf_family, sup_family, Frontier, FrontierKind, Orientation, PointClass};
use crate::linalg::{self, Matrix};
use crate::lp::{lp_solve_nonneg, LpOutcome, Sense};
use crate::problem::{Decision, Instance};
use crate::rational::{self, dot, format_vector, int, Rational, Vector};

fn check_dual(inst: &Instance, u_star: &[Rational]) -> Result<()> {
    check_dim(inst.m(), u_star.len())
}

fn shifted_points(inst: &Instance, d: &Decision, t: &Rational) -> Result<Frontier> {
    let tc = rational::scaled(inst.c(), t);
    let pts: Vec<Vector> = d.f.iter().map(|f| rational::add(f, &tc)).collect();
    Frontier::inf_of(inst.cone_c(), &pts)
}

fn min_pairing(u_star: &[Rational], gs: &[Vector]) -> Option<Rational> {
    gs.iter().map(|g| dot(u_star, g)).min()
}

/// `L(x, u*) = F(x) + Inf ⋃_{u ∈ G(x)+D} ⟨u*, u⟩{c}`.
pub fn lagrangian_vec(inst: &Instance, x: &str, u_star: &[Rational]) -> Result<Frontier> {
    check_dual(inst, u_star)?;
    lagrangian_of(inst, inst.decision(x)?, u_star)
}

fn lagrangian_of(inst: &Instance, d: &Decision, u_star: &[Rational]) -> Result<Frontier> {
    let cone = inst.cone_c();
    let Some(t) = min_pairing(u_star, &d.g) else {
        return Ok(Frontier::top(cone, Orientation::Inf));
    };
    if !inst.cone_d().in_neg_polar(u_star)? {
        // The inner scalar infimum is −∞; an empty F(x) is {+∞} and absorbs it.
        return Ok(if d.f.is_empty() {
            Frontier::top(cone, Orientation::Inf)
        } else {
            Frontier::bottom(cone, Orientation::Inf)
        });
    }
    shifted_points(inst, d, &t)
}

/// `L̂(x, u*) = F(x) + Inf ⋃_{u ∈ G(x)} ⟨u*, u⟩{c}`.
pub fn lagrangian_hat(inst: &Instance, x: &str, u_star: &[Rational]) -> Result<Frontier> {
    check_dual(inst, u_star)?;
    lagrangian_hat_of(inst, inst.decision(x)?, u_star)
}

fn lagrangian_hat_of(inst: &Instance, d: &Decision, u_star: &[Rational]) -> Result<Frontier> {
    match min_pairing(u_star, &d.g) {
        None => Ok(Frontier::top(inst.cone_c(), Orientation::Inf)),
        Some(t) => shifted_points(inst, d, &t),
    }
}

/// `φ(u*) = Inf ⋃_x L(x, u*)`.
pub fn phi(inst: &Instance, u_star: &[Rational]) -> Result<Frontier> {
    check_dual(inst, u_star)?;
    let parts = inst.decisions().iter().map(|d| lagrangian_of(inst, d, u_star)).collect::<Result<Vec<_>>>()?;
    inf_family(&parts)
}

/// `φ̂(u*) = Inf ⋃_x L̂(x, u*)`.
pub fn phi_hat(inst: &Instance, u_star: &[Rational]) -> Result<Frontier> {
    check_dual(inst, u_star)?;
    let parts = inst.decisions().iter().map(|d| lagrangian_hat_of(inst, d, u_star)).collect::<Result<Vec<_>>>()?;
    inf_family(&parts)
}

/// `d̄_K = Sup ⋃_{u* ∈ K} φ(u*)` for a finite nonempty dual set `K`.
pub fn dual_value(inst: &Instance, duals: &[Vector]) -> Result<Frontier> {
    if duals.is_empty() {
        return Err(Error::input("dual set must be nonempty"));
    }
    let values = duals.par_iter().map(|u| phi(inst, u)).collect::<Result<Vec<_>>>()?;
    sup_family(&values)
}

/// Checks `d̄_K ≼ p̄`. A violation is a bug in the lattice kernel and is
/// reported as a verification error carrying the witness.
pub fn weak_duality_check(inst: &Instance, duals: &[Vector]) -> Result<bool> {
    let dual = dual_value(inst, duals)?;
    let primal = inst.primal_value();
    if dual.leq(&primal)? {
        Ok(true)
    } else {
        Err(Error::Verification(format!(
            "weak duality violated: dual {dual} is not below primal {primal} for duals {}",
            format_duals(duals)
        )))
    }
}

/// Whether `conv(points) ∩ −D ≠ ∅`, decided by an exact LP over the convex
/// weights.
pub fn conv_meets_neg_cone(cone_d: &SimplicialCone, points: &[Vector]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    for p in points {
        check_dim(cone_d.dim(), p.len())?;
    }
    let k = points.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    a.push(vec![int(1); k]);
    b.push(int(1));
    a.push(vec![int(-1); k]);
    b.push(int(-1));
    // M⁻¹ (Σ λᵢ gᵢ) ≤ 0
    let coords: Vec<Vector> = points.iter().map(|p| cone_d.coords(p)).collect::<Result<_>>()?;
    for r in 0..cone_d.dim() {
        a.push(coords.iter().map(|z| z[r].clone()).collect());
        b.push(int(0));
    }
    let out = lp_solve_nonneg(&a, &b, &vec![int(0); k], Sense::Maximize)?;
    Ok(matches!(out, LpOutcome::Optimal { .. }))
}

/// `Sup ⋃_{u* ∈ −D°} L(x, u*)`: equals `Sup F(x)` when `conv G(x)` meets
/// `−D`, and `Top` otherwise.
pub fn sup_lagrangian_over_duals(inst: &Instance, x: &str) -> Result<Frontier> {
    let d = inst.decision(x)?;
    let cone = inst.cone_c();
    if d.f.is_empty() || d.g.is_empty() || !conv_meets_neg_cone(inst.cone_d(), &d.g)? {
        return Ok(Frontier::top(cone, Orientation::Sup));
    }
    Frontier::sup_of(cone, &d.f)
}

/// Whether `u*` is a positive subgradient of the perturbation map at `(0, y)`,
/// via `y ∈ φ(u*)`.
pub fn subgradient_check(inst: &Instance, u_star: &[Rational], y: &[Rational]) -> Result<bool> {
    check_dual(inst, u_star)?;
    check_dim(inst.q(), y.len())?;
    let primal = inst.primal_value();
    if primal.generators().is_none() || primal.classify(y)? != PointClass::OnFrontier {
        return Err(Error::input(format!("{} is not on the primal frontier", format_vector(y))));
    }
    if !inst.cone_d().in_neg_polar(u_star)? {
        return Err(Error::input(format!("{} is not in −D°", format_vector(u_star))));
    }
    on_phi_frontier(&phi(inst, u_star)?, y)
}

fn on_phi_frontier(value: &Frontier, y: &[Rational]) -> Result<bool> {
    Ok(value.generators().is_some() && value.classify(y)? == PointClass::OnFrontier)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    /// Every probe has a subgradient; pairs are `(probe, witness u*)`.
    StableOnProbes(Vec<(Vector, Vector)>),
    UnstableAt(Vector),
    /// The primal value is `Top` or `Bottom`.
    Degenerate,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::StableOnProbes(w) => {
                let parts: Vec<String> =
                    w.iter().map(|(y, u)| format!("{} <- {}", format_vector(y), format_vector(u))).collect();
                write!(f, "StableOnProbes [{}]", parts.join(", "))
            }
            Stability::UnstableAt(y) => write!(f, "UnstableAt({})", format_vector(y)),
            Stability::Degenerate => write!(f, "Degenerate"),
        }
    }
}

/// Searches `candidates` for a subgradient at each probe. Candidates outside
/// `−D°` are skipped.
pub fn stability_check(inst: &Instance, probes: &[Vector], candidates: &[Vector]) -> Result<Stability> {
    let primal = inst.primal_value();
    if primal.generators().is_none() {
        return Ok(Stability::Degenerate);
    }
    for y in probes {
        check_dim(inst.q(), y.len())?;
        if primal.classify(y)? != PointClass::OnFrontier {
            return Err(Error::input(format!("probe {} is not on the primal frontier", format_vector(y))));
        }
    }
    let mut admissible = Vec::new();
    for u in candidates {
        check_dual(inst, u)?;
        if inst.cone_d().in_neg_polar(u)? {
            admissible.push(u);
        }
    }
    let values = admissible.par_iter().map(|u| phi(inst, u)).collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::with_capacity(probes.len());
    for y in probes {
        let mut found = None;
        for (u, v) in admissible.iter().zip(&values) {
            if on_phi_frontier(v, y)? {
                found = Some((*u).clone());
                break;
            }
        }
        match found {
            Some(u) => witnesses.push((y.clone(), u)),
            None => return Ok(Stability::UnstableAt(y.clone())),
        }
    }
    Ok(Stability::StableOnProbes(witnesses))
}

/// Generators of a proper frontier, plus for `q = 2` the midpoints of both
/// staircase segments between consecutive generators.
pub fn default_probes(value: &Frontier) -> Vec<Vector> {
    let FrontierKind::Proper(gens) = value.kind() else {
        return Vec::new();
    };
    let mut probes = gens.clone();
    if value.cone().dim() == 2 {
        let cone = value.cone();
        let mut zs: Vec<Vector> = value.generator_coords().to_vec();
        zs.sort();
        for w in zs.windows(2) {
            let corner = vec![w[1][0].clone(), w[0][1].clone()];
            for (a, b) in [(&w[0], &corner), (&corner, &w[1])] {
                let mid: Vector = a.iter().zip(b).map(|(s, t)| (s + t) * rational::half()).collect();
                probes.push(cone.from_coords(&mid));
            }
        }
    }
    probes
}

/// A linear map `T: U → Y` with `T(D) ⊆ C`, stored as a `q×m` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveOperator {
    t: Matrix,
}

impl PositiveOperator {
    pub fn new(t: Matrix, cone_c: &SimplicialCone, cone_d: &SimplicialCone) -> Result<Self> {
        let (q, m) = (cone_c.dim(), cone_d.dim());
        check_dim(q, t.len())?;
        for row in &t {
            check_dim(m, row.len())?;
        }
        for d in cone_d.generators() {
            if !cone_c.contains(&linalg::mat_vec(&t, &d))? {
                return Err(Error::input(format!("operator maps generator {} outside C", format_vector(&d))));
            }
        }
        Ok(Self { t })
    }

    pub fn for_instance(t: Matrix, inst: &Instance) -> Result<Self> {
        Self::new(t, inst.cone_c(), inst.cone_d())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn apply(&self, u: &[Rational]) -> Vector {
        linalg::mat_vec(&self.t, u)
    }
}

impl fmt::Display for PositiveOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.t.iter().map(|r| format_vector(r)).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `T = c·u*ᵀ`, the rank-one operator `u ↦ ⟨u*, u⟩c`.
pub fn embed_operator(inst: &Instance, u_star: &[Rational]) -> Result<PositiveOperator> {
    check_dual(inst, u_star)?;
    if !inst.cone_d().in_neg_polar(u_star)? {
        return Err(Error::input(format!("{} is not in −D°", format_vector(u_star))));
    }
    let t = inst.c().iter().map(|ci| u_star.iter().map(|u| ci * u).collect()).collect();
    Ok(PositiveOperator { t })
}

fn check_operator(inst: &Instance, op: &PositiveOperator) -> Result<()> {
    check_dim(inst.q(), op.t.len())?;
    op.t.iter().try_for_each(|r| check_dim(inst.m(), r.len()))
}

/// `L(x, T) = Inf(F(x) + T(G(x)))`.
pub fn lagrangian_op(inst: &Instance, x: &str, op: &PositiveOperator) -> Result<Frontier> {
    check_operator(inst, op)?;
    lagrangian_op_of(inst, inst.decision(x)?, op)
}

fn lagrangian_op_of(inst: &Instance, d: &Decision, op: &PositiveOperator) -> Result<Frontier> {
    let images: Vec<Vector> = d.g.iter().map(|g| op.apply(g)).collect();
    let mut pts = Vec::with_capacity(d.f.len() * images.len());
    for f in &d.f {
        for tg in &images {
            pts.push(rational::add(f, tg));
        }
    }
    Frontier::inf_of(inst.cone_c(), &pts)
}

/// `Φ(T) = Inf ⋃_x L(x, T)`.
pub fn phi_op(inst: &Instance, op: &PositiveOperator) -> Result<Frontier> {
    check_operator(inst, op)?;
    let parts = inst.decisions().iter().map(|d| lagrangian_op_of(inst, d, op)).collect::<Result<Vec<_>>>()?;
    inf_family(&parts)
}

/// `d̃_K = Sup ⋃_{T ∈ K} Φ(T)` for a finite nonempty operator set.
pub fn dual_value_op(inst: &Instance, ops: &[PositiveOperator]) -> Result<Frontier> {
    if ops.is_empty() {
        return Err(Error::input("operator set must be nonempty"));
    }
    let values = ops.par_iter().map(|t| phi_op(inst, t)).collect::<Result<Vec<_>>>()?;
    sup_family(&values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    StrictlyBelow,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "Equal",
            Relation::StrictlyBelow => "StrictlyBelow",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub primal: Frontier,
    pub dual_finite: Frontier,
    pub dual_operator: Frontier,
    pub duals_used: Vec<Vector>,
    pub operators_used: Vec<PositiveOperator>,
    pub relation: Relation,
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "primal: {}", self.primal)?;
        writeln!(f, "dual: {}", self.dual_finite)?;
        writeln!(f, "operator dual: {}", self.dual_operator)?;
        writeln!(f, "duals: {}", format_duals(&self.duals_used))?;
        write!(f, "relation: {}", self.relation)
    }
}

pub fn format_duals(duals: &[Vector]) -> String {
    let parts: Vec<String> = duals.iter().map(|u| format_vector(u)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Computes `p̄`, `d̄_K` and `d̃_K` and verifies `d̄_K ≼ d̃_K ≼ p̄`. The
/// operator set is `{c·u*ᵀ : u* ∈ K ∩ −D°}` plus `extra`; when it is empty
/// `d̃_K` is `Bottom`.
pub fn gap_report(inst: &Instance, duals: &[Vector], extra: &[PositiveOperator]) -> Result<DualityReport> {
    let primal = inst.primal_value();
    let dual_finite = dual_value(inst, duals)?;
    let mut ops = Vec::new();
    for u in duals {
        if inst.cone_d().in_neg_polar(u)? {
            ops.push(embed_operator(inst, u)?);
        }
    }
    for op in extra {
        check_operator(inst, op)?;
        ops.push(op.clone());
    }
    let dual_operator =
        if ops.is_empty() { Frontier::bottom(inst.cone_c(), Orientation::Inf) } else { dual_value_op(inst, &ops)? };
    if !dual_finite.leq(&dual_operator)? {
        return Err(Error::Verification(format!("vector dual {dual_finite} exceeds operator dual {dual_operator}")));
    }
    if !dual_operator.leq(&primal)? {
        return Err(Error::Verification(format!("operator dual {dual_operator} exceeds primal {primal}")));
    }
    let relation = if primal.leq(&dual_finite)? { Relation::Equal } else { Relation::StrictlyBelow };
    Ok(DualityReport { primal, dual_finite, dual_operator, duals_used: duals.to_vec(), operators_used: ops, relation })
}

/// Every point of the cartesian grid `{lo, lo+step, …, hi}^m`.
pub fn dual_grid(m: usize, lo: &Rational, hi: &Rational, step: &Rational) -> Result<Vec<Vector>> {
    if step <= &int(0) {
        return Err(Error::input("grid step must be positive"));
    }
    if lo > hi {
        return Err(Error::input("grid requires lo <= hi"));
    }
    let mut axis = Vec::new();
    let mut v = lo.clone();
    while &v <= hi {
        axis.push(v.clone());
        v += step;
    }
    let mut out: Vec<Vector> = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

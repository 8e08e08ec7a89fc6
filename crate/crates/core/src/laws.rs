//! Seeded property suite over the lattice, problem, duality and convex
//! modules.
//!
//! Every law draws its cases from a per-trial `ChaCha8Rng`, so results are
//! identical under any worker count. The first failing trial of a law is
//! shrunk greedily (halving point lists, decision lists and coordinates)
//! before it is reported.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::cone::SimplicialCone;
use crate::convex::{self, HullFrontier};
use crate::duality::{self, PositiveOperator, Stability};
use crate::error::{Error, Result};
use crate::grid::{self, GridOracle};
use crate::lattice::{self, Frontier, PointClass};
use crate::problem::{Decision, Instance};
use crate::random::{self, ChaCha8Rng, InstanceParams};
use crate::rational::{self, format_rational, format_vector, int, ratio, Rational, Vector};

/// Deliberate defects for checking that the suite catches them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Build lattice elements without dominance pruning.
    NoPruning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub name: &'static str,
    pub trials: usize,
    pub violations: usize,
    /// Shrunk description of the first failing trial.
    pub witness: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{status:4} {:32} {:>5} trials {:>5} violations", self.name, self.trials, self.violations)?;
        if let Some(w) = &self.witness {
            write!(f, "\n     witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
struct Ctx {
    mutation: Mutation,
}

impl Ctx {
    fn infer(&self, cone: &Arc<SimplicialCone>, pts: &[Vector]) -> Result<Frontier> {
        match self.mutation {
            Mutation::None => Frontier::inf_of(cone, pts),
            Mutation::NoPruning => Frontier::unpruned(cone, pts),
        }
    }
}

trait Case: Clone + fmt::Display + Send + Sync {
    fn shrink(&self) -> Vec<Self>;
}

struct LawDef<C> {
    name: &'static str,
    gen: fn(&mut ChaCha8Rng) -> C,
    check: fn(&C, &Ctx) -> Result<bool>,
}

trait Law: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, seed: u64, trials: usize, ctx: &Ctx) -> LawReport;
}

fn trial_seed(seed: u64, name: &str, trial: usize) -> u64 {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    seed ^ h ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn holds<C>(law: &LawDef<C>, case: &C, ctx: &Ctx) -> std::result::Result<(), String> {
    match (law.check)(case, ctx) {
        Ok(true) => Ok(()),
        Ok(false) => Err(String::new()),
        Err(e) => Err(e.to_string()),
    }
}

impl<C: Case> Law for LawDef<C> {
    fn name(&self) -> &'static str {
        self.name
    }

    fn run(&self, seed: u64, trials: usize, ctx: &Ctx) -> LawReport {
        let cases: Vec<(C, std::result::Result<(), String>)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let case = (self.gen)(&mut random::rng(trial_seed(seed, self.name, t)));
                let outcome = holds(self, &case, ctx);
                (case, outcome)
            })
            .collect();
        let violations = cases.iter().filter(|(_, o)| o.is_err()).count();
        let witness = cases.iter().enumerate().find(|(_, (_, o))| o.is_err()).map(|(t, (case, o))| {
            let (small, msg) = self.shrink_failure(case.clone(), o.clone().unwrap_err(), ctx);
            if msg.is_empty() {
                format!("trial {t}: {small}")
            } else {
                format!("trial {t}: {small} ({msg})")
            }
        });
        LawReport { name: self.name, trials, violations, witness }
    }
}

impl<C: Case> LawDef<C> {
    fn shrink_failure(&self, mut case: C, mut msg: String, ctx: &Ctx) -> (C, String) {
        for _ in 0..200 {
            let next = case.shrink().into_iter().find_map(|c| holds(self, &c, ctx).err().map(|m| (c, m)));
            match next {
                Some((c, m)) => {
                    case = c;
                    msg = m;
                }
                None => break,
            }
        }
        (case, msg)
    }
}

#[derive(Clone, Debug)]
struct PointCase {
    cone: Arc<SimplicialCone>,
    sets: Vec<Vec<Vector>>,
    alpha: Rational,
}

impl fmt::Display for PointCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.sets.iter().map(|s| lattice::format_point_set(s)).collect();
        write!(
            f,
            "cone {} sets [{}] alpha {}",
            lattice::format_point_set(&self.cone.generators()),
            sets.join(", "),
            format_rational(&self.alpha)
        )
    }
}

fn halves<T: Clone>(v: &[T]) -> Vec<Vec<T>> {
    if v.len() < 2 {
        return Vec::new();
    }
    let mid = v.len() / 2;
    vec![v[..mid].to_vec(), v[mid..].to_vec()]
}

impl Case for PointCase {
    fn shrink(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for (i, s) in self.sets.iter().enumerate() {
            for h in halves(s) {
                let mut c = self.clone();
                c.sets[i] = h;
                out.push(c);
            }
        }
        let halved: Vec<Vec<Vector>> = self.sets.iter().map(|s| s.iter().map(|p| random::halve(p)).collect()).collect();
        if halved != self.sets {
            out.push(Self { sets: halved, ..self.clone() });
        }
        out
    }
}

fn point_case(rng: &mut ChaCha8Rng, nsets: usize, planar: bool) -> PointCase {
    let dim = if planar || rng.gen_ratio(3, 4) { 2 } else { 3 };
    let cone = Arc::new(random::random_cone(rng, dim));
    let sets = (0..nsets).map(|_| random::random_point_set(rng, dim, 5)).collect();
    PointCase { cone, sets, alpha: random::random_positive_scalar(rng) }
}

/// A point of `p + C` built from nonnegative cone coordinates.
fn above(rng: &mut ChaCha8Rng, cone: &SimplicialCone, p: &[Rational]) -> Vector {
    let z: Vector = (0..cone.dim()).map(|_| ratio(rng.gen_range(0..=2), 2)).collect();
    rational::add(p, &cone.from_coords(&z))
}

fn family_case(rng: &mut ChaCha8Rng) -> PointCase {
    let n = rng.gen_range(1..=5);
    point_case(rng, n, false)
}

fn minkowski(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    a.iter().flat_map(|x| b.iter().map(move |y| rational::add(x, y))).collect()
}

fn infer_all(case: &PointCase, ctx: &Ctx) -> Result<Vec<Frontier>> {
    case.sets.iter().map(|s| ctx.infer(&case.cone, s)).collect()
}

fn law_sum(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let (a, b) = (&c.sets[0], &c.sets[1]);
    let lhs = ctx.infer(&c.cone, a)?.add(&ctx.infer(&c.cone, b)?)?;
    Ok(lhs == ctx.infer(&c.cone, &minkowski(a, b))?)
}

fn law_scale(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let a = &c.sets[0];
    let scaled: Vec<Vector> = a.iter().map(|p| rational::scaled(p, &c.alpha)).collect();
    Ok(ctx.infer(&c.cone, a)?.scale(&c.alpha)? == ctx.infer(&c.cone, &scaled)?)
}

fn law_idempotent(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let s = ctx.infer(&c.cone, &c.sets[0])?;
    let gens = s.generators().expect("nonempty point set");
    Ok(lattice::is_antichain(&c.cone, gens)? && ctx.infer(&c.cone, gens)? == s)
}

fn law_union(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let all: Vec<Vector> = c.sets.concat();
    Ok(lattice::inf_family(&infer_all(c, ctx)?)? == ctx.infer(&c.cone, &all)?)
}

fn split(c: &PointCase) -> (&[Vec<Vector>], &[Vec<Vector>]) {
    c.sets.split_at(c.sets.len() / 2)
}

fn law_family_sums(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let (fa, fb) = split(c);
    let mut sums = Vec::new();
    for a in fa {
        for b in fb {
            sums.extend(minkowski(a, b));
        }
    }
    let rhs = ctx.infer(&c.cone, &fa.concat())?.add(&ctx.infer(&c.cone, &fb.concat())?)?;
    Ok(ctx.infer(&c.cone, &sums)? == rhs)
}

fn law_family_sups(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let (fa, fb) = split(c);
    let ea: Vec<Frontier> = fa.iter().map(|s| ctx.infer(&c.cone, s)).collect::<Result<_>>()?;
    let eb: Vec<Frontier> = fb.iter().map(|s| ctx.infer(&c.cone, s)).collect::<Result<_>>()?;
    let mut sums = Vec::new();
    for a in &ea {
        for b in &eb {
            sums.push(a.add(b)?);
        }
    }
    let rhs = lattice::sup_family(&ea)?.add(&lattice::sup_family(&eb)?)?;
    lattice::sup_family(&sums)?.leq(&rhs)
}

fn law_strict_order(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let (a, b) = (&c.sets[0], &c.sets[1]);
    let (s1, s2) = (ctx.infer(&c.cone, a)?, ctx.infer(&c.cone, b)?);
    let lattice_leq = s1.leq(&s2)?;
    let mut generator_level = true;
    for g in s2.generators().expect("proper") {
        generator_level &= s1.classify(g)? != PointClass::Below;
    }
    let g = grid::default_grid(c.cone.dim());
    let (o1, o2) = (GridOracle::new(a, &c.cone, &g)?, GridOracle::new(b, &c.cone, &g)?);
    let grid_disjoint = (0..g.len()).all(|i| !(o2.classify_index(i) == PointClass::OnFrontier && !o1.in_closure(i)));
    Ok(lattice_leq == generator_level && lattice_leq == grid_disjoint)
}

fn canonicity_case(rng: &mut ChaCha8Rng) -> PointCase {
    let mut c = point_case(rng, 1, false);
    let mut b = c.sets[0].clone();
    for _ in 0..rng.gen_range(0..=2) {
        let p = random::pick(rng, &c.sets[0]).clone();
        b.push(above(rng, &c.cone, &p));
    }
    if rng.gen_bool(0.5) {
        b.push(random::random_half_point(rng, c.cone.dim()));
    }
    c.sets.push(b);
    c
}

fn law_canonicity(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let (s1, s2) = (ctx.infer(&c.cone, &c.sets[0])?, ctx.infer(&c.cone, &c.sets[1])?);
    let both = s1.leq(&s2)? && s2.leq(&s1)?;
    let anti = lattice::is_antichain(&c.cone, s1.generators().expect("proper"))?
        && lattice::is_antichain(&c.cone, s2.generators().expect("proper"))?;
    Ok(anti && both == (s1.generators() == s2.generators()))
}

fn chain_case(rng: &mut ChaCha8Rng) -> PointCase {
    let mut c = point_case(rng, 1, false);
    for _ in 0..2 {
        let prev = c.sets.last().expect("nonempty").clone();
        let next = if rng.gen_bool(0.6) {
            prev.iter().map(|p| above(rng, &c.cone, p)).collect()
        } else {
            random::random_point_set(rng, c.cone.dim(), 5)
        };
        c.sets.push(next);
    }
    c
}

fn law_order(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let s = infer_all(c, ctx)?;
    let bottom = Frontier::bottom(&c.cone, lattice::Orientation::Inf);
    let top = Frontier::top(&c.cone, lattice::Orientation::Inf);
    for a in &s {
        if !a.leq(a)? || !bottom.leq(a)? || !a.leq(&top)? {
            return Ok(false);
        }
        for b in &s {
            if a.leq(b)? && b.leq(a)? && a != b {
                return Ok(false);
            }
            for d in &s {
                if a.leq(b)? && b.leq(d)? && !a.leq(d)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn law_complete_lattice(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let fam = infer_all(c, ctx)?;
    let inf = lattice::inf_family(&fam)?;
    let sup = lattice::sup_family(&fam)?;
    let mut closure = fam.clone();
    for (i, a) in fam.iter().enumerate() {
        for b in &fam[i..] {
            closure.push(lattice::inf_family(&[a.clone(), b.clone()])?);
            closure.push(lattice::sup_family(&[a.clone(), b.clone()])?);
        }
    }
    closure.push(inf.clone());
    closure.push(sup.clone());
    for m in &fam {
        if !inf.leq(m)? || !m.leq(&sup)? {
            return Ok(false);
        }
    }
    for l in &closure {
        let mut lower = true;
        let mut upper = true;
        for m in &fam {
            lower &= l.leq(m)?;
            upper &= m.leq(l)?;
        }
        if (lower && !l.leq(&inf)?) || (upper && !sup.leq(l)?) {
            return Ok(false);
        }
    }
    Ok(inf == ctx.infer(&c.cone, &c.sets.concat())?)
}

fn law_mirror(c: &PointCase, _: &Ctx) -> Result<bool> {
    let a = &c.sets[0];
    let neg: Vec<Vector> = a.iter().map(|p| p.iter().map(|x| -x).collect()).collect();
    Ok(Frontier::sup_of(&c.cone, a)? == Frontier::inf_of(&c.cone, &neg)?.negated())
}

fn law_oracle(c: &PointCase, ctx: &Ctx) -> Result<bool> {
    let g = grid::default_grid(c.cone.dim());
    let (a, b) = (&c.sets[0], &c.sets[1]);
    let s = ctx.infer(&c.cone, a)?;
    let oracle = GridOracle::new(a, &c.cone, &g)?;
    for (i, y) in g.points().enumerate() {
        if oracle.classify_index(i) != s.classify(&y)? {
            return Ok(false);
        }
    }
    let s2 = ctx.infer(&c.cone, b)?;
    Ok(!s.leq(&s2)? || grid::grid_leq(a, b, &c.cone, &g)?)
}

#[derive(Clone, Debug)]
struct InstanceCase {
    inst: Instance,
    duals: Vec<Vector>,
    ops: Vec<PositiveOperator>,
}

impl fmt::Display for InstanceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instance {} duals {}",
            self.inst.to_json().split_whitespace().collect::<String>(),
            duality::format_duals(&self.duals)
        )
    }
}

impl InstanceCase {
    fn with_decisions(&self, decisions: Vec<Decision>) -> Option<Self> {
        let inst = Instance::from_shared(
            self.inst.cone_c().clone(),
            self.inst.cone_d().clone(),
            self.inst.c().clone(),
            decisions,
        )
        .ok()?;
        Some(Self { inst, ..self.clone() })
    }
}

impl Case for InstanceCase {
    fn shrink(&self) -> Vec<Self> {
        let ds = self.inst.decisions();
        let mut out: Vec<Self> = halves(ds).into_iter().filter_map(|h| self.with_decisions(h)).collect();
        for (i, d) in ds.iter().enumerate() {
            for (hf, hg) in halves(&d.f)
                .into_iter()
                .map(|h| (h, d.g.clone()))
                .chain(halves(&d.g).into_iter().map(|h| (d.f.clone(), h)))
            {
                let mut next = ds.to_vec();
                next[i] = Decision::new(d.name.clone(), hf, hg);
                out.extend(self.with_decisions(next));
            }
        }
        let halved: Vec<Decision> = ds
            .iter()
            .map(|d| {
                Decision::new(
                    d.name.clone(),
                    d.f.iter().map(|p| random::halve(p)).collect(),
                    d.g.iter().map(|p| random::halve(p)).collect(),
                )
            })
            .collect();
        if halved != ds {
            out.extend(self.with_decisions(halved));
        }
        for h in halves(&self.duals) {
            out.push(Self { duals: h, ..self.clone() });
        }
        out
    }
}

fn instance_params(rng: &mut ChaCha8Rng, planar: bool) -> InstanceParams {
    InstanceParams {
        q: if planar || rng.gen_ratio(3, 4) { 2 } else { 3 },
        m: rng.gen_range(1..=3),
        decisions: rng.gen_range(1..=5),
        max_points: 3,
    }
}

fn build_instance_case(rng: &mut ChaCha8Rng, inst: Instance) -> InstanceCase {
    let mut duals = vec![vec![int(0); inst.m()]];
    duals.extend(random::random_duals(rng, &inst, 6));
    let ops = (0..5).map(|_| random::random_positive_operator(rng, &inst).expect("positive by construction")).collect();
    InstanceCase { inst, duals, ops }
}

fn instance_case(rng: &mut ChaCha8Rng) -> InstanceCase {
    let p = instance_params(rng, false);
    let inst = random::random_instance(rng, &p).expect("valid parameters");
    build_instance_case(rng, inst)
}

fn planar_slater_case(rng: &mut ChaCha8Rng) -> InstanceCase {
    let p = instance_params(rng, true);
    let inst = random::random_slater_instance(rng, &p).expect("valid parameters");
    build_instance_case(rng, inst)
}

fn law_primal_is_w0(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let zero = vec![int(0); c.inst.m()];
    Ok(c.inst.perturbation_value(&zero)? == c.inst.primal_value())
}

fn law_relaxation_monotone(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let u = &c.duals[c.duals.len() - 1];
    let shift = c.inst.cone_d().interior_point();
    let relaxed = rational::sub(u, &shift);
    for d in c.inst.decisions() {
        if c.inst.is_feasible_under(d, u)? && !c.inst.is_feasible_under(d, &relaxed)? {
            return Ok(false);
        }
    }
    c.inst.perturbation_value(&relaxed)?.leq(&c.inst.perturbation_value(u)?)
}

fn law_slater_feasible(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    Ok(!c.inst.slater_check() || !c.inst.feasible_set().is_empty())
}

fn law_weak_duality(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    duality::weak_duality_check(&c.inst, &c.duals)
}

fn law_decomposition(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let unbounded = c.inst.decisions().iter().any(|d| !d.f.is_empty() && !d.g.is_empty());
    for u in &c.duals {
        let p = duality::phi(&c.inst, u)?;
        let ok = if c.inst.cone_d().in_neg_polar(u)? {
            p == duality::phi_hat(&c.inst, u)?
        } else if unbounded {
            p.is_bottom()
        } else {
            p.is_top()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn law_operator_chain(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let report = duality::gap_report(&c.inst, &c.duals, &c.ops)?;
    Ok(report.dual_finite.leq(&report.dual_operator)?
        && report.dual_operator.leq(&report.primal)?
        && report.operators_used.len() >= c.ops.len())
}

fn law_sup_lagrangian(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let feasible = c.inst.feasible_set();
    for d in c.inst.decisions() {
        let value = duality::sup_lagrangian_over_duals(&c.inst, &d.name)?;
        if feasible.contains(&d.name.as_str()) && value != Frontier::sup_of(c.inst.cone_c(), &d.f)? && !d.f.is_empty() {
            return Ok(false);
        }
        if !duality::conv_meets_neg_cone(c.inst.cone_d(), &d.g)? && !value.is_top() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn law_json_round_trip(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    Ok(Instance::from_json(&c.inst.to_json())? == c.inst)
}

fn law_relaxation_bound(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let Ok(cv) = convex::convexify(&c.inst) else {
        return Ok(true);
    };
    convex::primal_value_conv(&cv)?.leq_frontier(&c.inst.primal_value())
}

fn law_certificate(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let cv = convex::convexify(&c.inst)?;
    let cert = convex::certify_strong_duality(&cv)?;
    if !cert.is_certified() {
        return Ok(false);
    }
    let primal = cert.primal_conv.as_ref().expect("exact mode");
    let mut values = Vec::new();
    for u in &cert.duals {
        if !c.inst.cone_d().in_neg_polar(u)? {
            return Ok(false);
        }
        values.push(convex::phi_conv(&cv, u)?);
    }
    for f in &cert.facets {
        let value = convex::phi_conv(&cv, &f.u_star)?;
        for y in &f.supported {
            if value.classify(y)? != PointClass::OnFrontier {
                return Ok(false);
            }
        }
    }
    Ok(convex::hull_sup_family(&values)? == *primal)
}

fn perturbation_samples(m: usize) -> Vec<Vector> {
    duality::dual_grid(m, &int(-5), &int(5), &int(1)).expect("valid grid")
}

fn law_subgradient_oracle(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let primal = c.inst.primal_value();
    let Some(gens) = primal.generators() else {
        return Ok(true);
    };
    let samples = perturbation_samples(c.inst.m());
    for u in &c.duals {
        if !c.inst.cone_d().in_neg_polar(u)? {
            continue;
        }
        for y in gens {
            let sub = duality::subgradient_check(&c.inst, u, y)?;
            if sub != (duality::phi(&c.inst, u)?.classify(y)? == PointClass::OnFrontier) {
                return Ok(false);
            }
            if sub && grid::grid_subgradient_class(&c.inst, u, y, &samples)? == PointClass::Above {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn stability_candidates(c: &InstanceCase) -> Vec<Vector> {
    let step = if c.inst.m() == 1 { ratio(1, 2) } else { int(1) };
    let mut cands = c.duals.clone();
    cands.extend(duality::dual_grid(c.inst.m(), &int(0), &int(3), &step).expect("valid grid"));
    cands
}

fn law_stable_probes(c: &InstanceCase, _: &Ctx) -> Result<bool> {
    let primal = c.inst.primal_value();
    let probes = duality::default_probes(&primal);
    let cands = stability_candidates(c);
    match duality::stability_check(&c.inst, &probes, &cands)? {
        Stability::Degenerate => Ok(primal.generators().is_none()),
        Stability::StableOnProbes(w) => {
            let dv = duality::dual_value(&c.inst, &cands)?;
            for (y, u) in &w {
                if !duality::subgradient_check(&c.inst, u, y)? || dv.classify(y)? != PointClass::OnFrontier {
                    return Ok(false);
                }
            }
            Ok(w.len() == probes.len())
        }
        Stability::UnstableAt(y) => {
            for u in &cands {
                if c.inst.cone_d().in_neg_polar(u)? && duality::subgradient_check(&c.inst, u, &y)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn two_sets(rng: &mut ChaCha8Rng) -> PointCase {
    point_case(rng, 2, false)
}

fn two_planar_sets(rng: &mut ChaCha8Rng) -> PointCase {
    point_case(rng, 2, true)
}

fn one_set(rng: &mut ChaCha8Rng) -> PointCase {
    point_case(rng, 1, false)
}

fn family_pair_case(rng: &mut ChaCha8Rng) -> PointCase {
    let n = 2 * rng.gen_range(1..=3);
    point_case(rng, n, false)
}

fn laws() -> Vec<Box<dyn Law>> {
    fn p(
        name: &'static str,
        gen: fn(&mut ChaCha8Rng) -> PointCase,
        check: fn(&PointCase, &Ctx) -> Result<bool>,
    ) -> Box<dyn Law> {
        Box::new(LawDef { name, gen, check })
    }
    fn i(
        name: &'static str,
        gen: fn(&mut ChaCha8Rng) -> InstanceCase,
        check: fn(&InstanceCase, &Ctx) -> Result<bool>,
    ) -> Box<dyn Law> {
        Box::new(LawDef { name, gen, check })
    }
    vec![
        p("inf-sum", two_sets, law_sum),
        p("inf-scaling", one_set, law_scale),
        p("inf-idempotent", one_set, law_idempotent),
        p("inf-union", family_case, law_union),
        p("family-sum-inf", family_pair_case, law_family_sums),
        p("family-sum-sup", family_pair_case, law_family_sups),
        p("strict-order", two_planar_sets, law_strict_order),
        p("canonical-form", canonicity_case, law_canonicity),
        p("partial-order", chain_case, law_order),
        p("complete-lattice", family_case, law_complete_lattice),
        p("sup-mirror", one_set, law_mirror),
        p("grid-oracle", two_planar_sets, law_oracle),
        i("primal-is-w0", instance_case, law_primal_is_w0),
        i("perturbation-monotone", instance_case, law_relaxation_monotone),
        i("slater-feasible", instance_case, law_slater_feasible),
        i("weak-duality", instance_case, law_weak_duality),
        i("phi-decomposition", instance_case, law_decomposition),
        i("operator-chain", instance_case, law_operator_chain),
        i("sup-lagrangian", instance_case, law_sup_lagrangian),
        i("instance-json", instance_case, law_json_round_trip),
        i("relaxation-bound", planar_slater_case, law_relaxation_bound),
        i("certificate", planar_slater_case, law_certificate),
        i("subgradient-oracle", instance_case, law_subgradient_oracle),
        i("stable-probes", instance_case, law_stable_probes),
    ]
}

pub fn law_names() -> Vec<&'static str> {
    laws().iter().map(|l| l.name()).collect()
}

/// Runs one law by name.
pub fn run_law(name: &str, seed: u64, trials: usize, mutation: Mutation) -> Result<LawReport> {
    let all = laws();
    let law = all.iter().find(|l| l.name() == name).ok_or_else(|| Error::input(format!("unknown law {name:?}")))?;
    Ok(law.run(seed, trials, &Ctx { mutation }))
}

/// Runs every law with the same seed and trial count.
pub fn run_all(seed: u64, trials: usize, mutation: Mutation) -> Result<Vec<LawReport>> {
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let ctx = Ctx { mutation };
    Ok(laws().iter().map(|l| l.run(seed, trials, &ctx)).collect())
}

/// Human-readable vector list, used in witnesses.
pub fn format_points(points: &[Vector]) -> String {
    points.iter().map(|p| format_vector(p)).collect::<Vec<_>>().join(" ")
}

#[doc(hidden)]
pub fn hull_of_points(cone: &Arc<SimplicialCone>, pts: &[Vector]) -> Result<HullFrontier> {
    HullFrontier::from_points(cone, pts)
}

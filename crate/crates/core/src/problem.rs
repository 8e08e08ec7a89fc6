//! Finite set-valued problems: feasibility, primal value, perturbation map and
//! the Slater condition.
//!
//! A decision `x` carries finite point lists `F(x) ⊆ Y` and `G(x) ⊆ U`. An
//! empty `F(x)` encodes `F(x) = {+∞}` (so `x ∉ dom F`), an empty `G(x)`
//! encodes `x ∉ dom G`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::{ConeClass, SimplicialCone};
use crate::error::{check_dim, Error, Result};
use crate::lattice::Frontier;
use crate::rational::{format_rational, parse_rational, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub name: String,
    pub f: Vec<Vector>,
    pub g: Vec<Vector>,
}

impl Decision {
    pub fn new(name: impl Into<String>, f: Vec<Vector>, g: Vec<Vector>) -> Self {
        Self { name: name.into(), f, g }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    cone_c: Arc<SimplicialCone>,
    cone_d: Arc<SimplicialCone>,
    c: Vector,
    decisions: Vec<Decision>,
}

impl Instance {
    pub fn new(cone_c: SimplicialCone, cone_d: SimplicialCone, c: Vector, decisions: Vec<Decision>) -> Result<Self> {
        Self::from_shared(Arc::new(cone_c), Arc::new(cone_d), c, decisions)
    }

    pub fn from_shared(
        cone_c: Arc<SimplicialCone>,
        cone_d: Arc<SimplicialCone>,
        c: Vector,
        decisions: Vec<Decision>,
    ) -> Result<Self> {
        let (q, m) = (cone_c.dim(), cone_d.dim());
        check_dim(q, c.len())?;
        if cone_c.classify(&c)? != ConeClass::Interior {
            return Err(Error::input("scalarization direction c must lie in the interior of C"));
        }
        if decisions.is_empty() {
            return Err(Error::input("an instance needs at least one decision"));
        }
        let mut names = HashSet::new();
        for d in &decisions {
            if !names.insert(d.name.as_str()) {
                return Err(Error::input(format!("duplicate decision name {:?}", d.name)));
            }
            for f in &d.f {
                check_dim(q, f.len())?;
            }
            for g in &d.g {
                check_dim(m, g.len())?;
            }
        }
        Ok(Self { cone_c, cone_d, c, decisions })
    }

    pub fn q(&self) -> usize {
        self.cone_c.dim()
    }

    pub fn m(&self) -> usize {
        self.cone_d.dim()
    }

    pub fn cone_c(&self) -> &Arc<SimplicialCone> {
        &self.cone_c
    }

    pub fn cone_d(&self) -> &Arc<SimplicialCone> {
        &self.cone_d
    }

    pub fn c(&self) -> &Vector {
        &self.c
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.decisions
    }

    pub fn decision(&self, name: &str) -> Result<&Decision> {
        self.decisions.iter().find(|d| d.name == name).ok_or_else(|| Error::input(format!("unknown decision {name:?}")))
    }

    /// The same data restricted to the named decisions.
    pub fn restricted_to(&self, names: &[&str]) -> Result<Self> {
        let decisions = names.iter().map(|n| self.decision(n).cloned()).collect::<Result<Vec<_>>>()?;
        Self::from_shared(self.cone_c.clone(), self.cone_d.clone(), self.c.clone(), decisions)
    }

    /// Whether `G(x) ∩ (−D − u) ≠ ∅`.
    pub fn is_feasible_under(&self, d: &Decision, u: &[Rational]) -> Result<bool> {
        check_dim(self.m(), u.len())?;
        for g in &d.g {
            let shifted: Vector = g.iter().zip(u).map(|(a, b)| -(a + b)).collect();
            if self.cone_d.contains(&shifted)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn feasible_set(&self) -> Vec<&str> {
        let zero = vec![Rational::default(); self.m()];
        self.decisions
            .iter()
            .filter(|d| self.is_feasible_under(d, &zero).unwrap_or(false))
            .map(|d| d.name.as_str())
            .collect()
    }

    /// `p̄ = Inf ⋃_{x ∈ S} F(x)`.
    pub fn primal_value(&self) -> Frontier {
        let zero = vec![Rational::default(); self.m()];
        self.perturbation_value(&zero).expect("zero perturbation has the right dimension")
    }

    /// `W(u) = Inf ⋃ { F(x) : G(x) ∩ (−D − u) ≠ ∅ }`.
    pub fn perturbation_value(&self, u: &[Rational]) -> Result<Frontier> {
        let mut pts = Vec::new();
        for d in &self.decisions {
            if self.is_feasible_under(d, u)? {
                pts.extend(d.f.iter().cloned());
            }
        }
        Frontier::inf_of(&self.cone_c, &pts)
    }

    /// `G(dom F) ∩ −Int D ≠ ∅`.
    pub fn slater_check(&self) -> bool {
        self.decisions.iter().filter(|d| !d.f.is_empty()).any(|d| {
            d.g.iter().any(|g| {
                let neg: Vector = g.iter().map(|x| -x).collect();
                self.cone_d.classify(&neg).map(|k| k == ConeClass::Interior).unwrap_or(false)
            })
        })
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile::from(self);
        let mut s = serde_json::to_string_pretty(&file).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.try_into()
    }
}

pub fn feasible_set(inst: &Instance) -> Vec<&str> {
    inst.feasible_set()
}

pub fn primal_value(inst: &Instance) -> Frontier {
    inst.primal_value()
}

pub fn perturbation_value(inst: &Instance, u: &[Rational]) -> Result<Frontier> {
    inst.perturbation_value(u)
}

pub fn slater_check(inst: &Instance) -> bool {
    inst.slater_check()
}

/// On-disk form. Rationals are strings; generator matrices are lists of
/// columns.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    q: usize,
    m: usize,
    #[serde(rename = "cone_C")]
    cone_c: ConeFile,
    #[serde(rename = "cone_D")]
    cone_d: ConeFile,
    c: Vec<String>,
    decisions: Vec<DecisionFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeFile {
    generators: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecisionFile {
    name: String,
    #[serde(rename = "F")]
    f: Vec<Vec<String>>,
    #[serde(rename = "G")]
    g: Vec<Vec<String>>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_vec(v: &[String]) -> Result<Vector> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn parse_cone(file: &ConeFile, dim: usize, label: &str) -> Result<SimplicialCone> {
    if file.generators.len() != dim || file.generators.iter().any(|c| c.len() != dim) {
        return Err(Error::input(format!("{label} generators must form a {dim}×{dim} matrix")));
    }
    let cols = file.generators.iter().map(|c| parse_vec(c)).collect::<Result<Vec<_>>>()?;
    SimplicialCone::from_columns(&cols).map_err(|e| Error::input(format!("{label}: {e}")))
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        let cone = |k: &SimplicialCone| ConeFile { generators: k.generators().iter().map(|g| strings(g)).collect() };
        Self {
            q: inst.q(),
            m: inst.m(),
            cone_c: cone(&inst.cone_c),
            cone_d: cone(&inst.cone_d),
            c: strings(&inst.c),
            decisions: inst
                .decisions
                .iter()
                .map(|d| DecisionFile {
                    name: d.name.clone(),
                    f: d.f.iter().map(|v| strings(v)).collect(),
                    g: d.g.iter().map(|v| strings(v)).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<InstanceFile> for Instance {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Self> {
        if file.q == 0 || file.m == 0 {
            return Err(Error::input("q and m must be positive"));
        }
        let cone_c = parse_cone(&file.cone_c, file.q, "cone_C")?;
        let cone_d = parse_cone(&file.cone_d, file.m, "cone_D")?;
        let c = parse_vec(&file.c)?;
        let decisions = file
            .decisions
            .iter()
            .map(|d| {
                Ok(Decision {
                    name: d.name.clone(),
                    f: d.f.iter().map(|v| parse_vec(v)).collect::<Result<_>>()?,
                    g: d.g.iter().map(|v| parse_vec(v)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(cone_c, cone_d, c, decisions)
    }
}

/// Fixture instances used throughout the tests and documentation. All live
/// in `q = 2` with the nonnegative orthant as `C` and `c = (1, 1)`.
pub mod fixtures {
    use super::*;
    use crate::rational::vector;

    /// The gap instance: `x1` is infeasible with the better objective,
    /// `x2` is feasible.
    pub fn gap_instance() -> Instance {
        Instance::new(
            SimplicialCone::orthant(2),
            SimplicialCone::orthant(1),
            vector(&[1, 1]),
            vec![
                Decision::new("x1", vec![vector(&[0, 0])], vec![vector(&[1])]),
                Decision::new("x2", vec![vector(&[2, 2])], vec![vector(&[-1])]),
            ],
        )
        .expect("valid fixture")
    }

    /// The gap instance restricted to its feasible decision.
    pub fn single_feasible() -> Instance {
        gap_instance().restricted_to(&["x2"]).expect("valid fixture")
    }

    /// A decision whose constraint values straddle `−D` without touching it.
    pub fn caveat_instance() -> Instance {
        Instance::new(
            SimplicialCone::orthant(2),
            SimplicialCone::orthant(2),
            vector(&[1, 1]),
            vec![Decision::new("x0", vec![vector(&[0, 0])], vec![vector(&[2, -2]), vector(&[-2, 2])])],
        )
        .expect("valid fixture")
    }

    pub fn all() -> Vec<(&'static str, Instance)> {
        vec![("gap", gap_instance()), ("single_feasible", single_feasible()), ("caveat", caveat_instance())]
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::rational::vector;

    #[test]
    fn feasible_set_examples() {
        assert_eq!(gap_instance().feasible_set(), vec!["x2"]);
        assert!(caveat_instance().feasible_set().is_empty());
        let inst = Instance::new(
            SimplicialCone::orthant(2),
            SimplicialCone::orthant(1),
            vector(&[1, 1]),
            vec![Decision::new("z", vec![vector(&[0, 0])], vec![vector(&[3]), vector(&[0])])],
        )
        .unwrap();
        assert_eq!(inst.feasible_set(), vec!["z"]);
    }

    #[test]
    fn primal_value_examples() {
        assert_eq!(gap_instance().primal_value().to_string(), "INF {(2,2)}");
        assert!(caveat_instance().primal_value().is_top());
        let mut decisions = gap_instance().decisions().to_vec();
        decisions.push(Decision::new("x3", vec![vector(&[0, 3])], vec![vector(&[0])]));
        let inst =
            Instance::new(SimplicialCone::orthant(2), SimplicialCone::orthant(1), vector(&[1, 1]), decisions).unwrap();
        assert_eq!(inst.primal_value().to_string(), "INF {(0,3),(2,2)}");
    }

    #[test]
    fn perturbation_examples() {
        let inst = gap_instance();
        assert_eq!(inst.perturbation_value(&vector(&[0])).unwrap(), inst.primal_value());
        assert_eq!(inst.perturbation_value(&vector(&[-2])).unwrap().to_string(), "INF {(0,0)}");
        assert!(inst.perturbation_value(&vector(&[3])).unwrap().is_top());
        assert!(inst.perturbation_value(&vector(&[1, 1])).is_err());
    }

    #[test]
    fn slater_examples() {
        assert!(gap_instance().slater_check());
        assert!(!caveat_instance().slater_check());
        let inst = Instance::new(
            SimplicialCone::orthant(2),
            SimplicialCone::orthant(1),
            vector(&[1, 1]),
            vec![Decision::new("x", vec![], vec![vector(&[-1])])],
        )
        .unwrap();
        assert!(!inst.slater_check());
    }

    #[test]
    fn json_round_trip_of_fixtures() {
        for (_, inst) in all() {
            let text = inst.to_json();
            assert_eq!(Instance::from_json(&text).unwrap(), inst);
        }
    }

    #[test]
    fn parses_documented_format() {
        let text = r#"{ "q":2, "m":1,
            "cone_C": {"generators": [["1","0"],["0","1"]]},
            "cone_D": {"generators": [["1"]]},
            "c": ["1","1"],
            "decisions": [
              {"name":"x1", "F": [["0","0"]], "G": [["1"]]},
              {"name":"x2", "F": [["2","2"]], "G": [["-1"]]} ] }"#;
        assert_eq!(Instance::from_json(text).unwrap(), gap_instance());
    }

    #[test]
    fn rejects_invalid_files() {
        let base = gap_instance().to_json();
        let cases = [
            base.replacen("\"q\"", "\"extra\": 1, \"q\"", 1),
            base.replacen("\"1\",\n        \"0\"", "\"1\",\n        \"1\"", 1),
            base.replacen("\"c\": [\n    \"1\",\n    \"1\"", "\"c\": [\n    \"1\",\n    \"0\"", 1),
            base.replacen("\"x2\"", "\"x1\"", 1),
            base.replacen("\"-1\"", "\"abc\"", 1),
        ];
        for text in cases {
            assert_ne!(text, base, "mutation did not apply");
            assert!(Instance::from_json(&text).is_err(), "accepted:\n{text}");
        }
        let singular = r#"{"q":2,"m":1,"cone_C":{"generators":[["1","1"],["2","2"]]},
            "cone_D":{"generators":[["1"]]},"c":["1","1"],"decisions":[{"name":"a","F":[],"G":[]}]}"#;
        assert!(Instance::from_json(singular).is_err());
    }
}

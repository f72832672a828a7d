//! Catalog of Coxeter-group prepotentials and their two-dimensional
//! submanifold families.
//!
//! Each entry carries the degrees of the basic invariant polynomials in
//! ascending order (so the last one is the Coxeter number `h`) together
//! with a polynomial prepotential whose Euler weights are those degrees in
//! reverse. The two-parameter family
//!
//! ```text
//! t^1 = tau1 - (1/4h) (sum_j k_j k_{m+1-j} d_j d_{m+1-j}) tau2^{h/2}
//! t^j = k_j tau2^{d_j / 2}
//! t^m = tau2
//! ```
//!
//! always has constant induced metric with unit off-diagonal entry and a
//! tangent Euler field of weights `(h, 2)`. Naturality cuts out a finite
//! set of polynomial conditions in the constants `k_j`, computed here by
//! running the tangency residuals with the `k_j` as symbolic variables.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::frobenius::{
    euler_check, metric_from_prepotential, raise_first_two, structure_tensor, wdvv_check,
    EulerTerm, FrobeniusSpec,
};
use crate::poly::{parse_terms, PuiseuxPoly, VarSet};
use crate::scalar::Rational;
use crate::submanifold::{canonical_2d_prepotential, induce, SubmanifoldMap};

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// One catalog group: invariant degrees plus the associated spec.
#[derive(Clone, Debug)]
pub struct CoxeterEntry {
    pub name: String,
    /// Degrees of the basic invariants, ascending; the last is `h`.
    pub exponents: Vec<u32>,
    pub spec: FrobeniusSpec,
}

impl CoxeterEntry {
    pub fn coxeter_number(&self) -> u32 {
        *self.exponents.last().expect("nonempty exponent list")
    }

    /// Degrees in the Euler-field order `d_1 = h, ..., d_m = 2`.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = self.exponents.clone();
        d.reverse();
        d
    }

    /// `d_i + d_{m+1-i} = h + 2` for every `i`.
    pub fn exponent_pairing_holds(&self) -> bool {
        let d = &self.exponents;
        let h = self.coxeter_number();
        let m = d.len();
        (0..m).all(|i| d[i] + d[m - 1 - i] == h + 2)
    }
}

#[derive(Deserialize)]
struct EntryRepr {
    name: String,
    exponents: Vec<u32>,
    variables: Vec<String>,
    terms: Vec<String>,
    weights: Vec<Rational>,
    shifts: Vec<Rational>,
}

#[derive(Deserialize)]
struct CatalogRepr {
    entries: Vec<EntryRepr>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CoxeterEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Catalog> {
        let repr: CatalogRepr =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("bad catalog: {e}")))?;
        let entries = repr
            .entries
            .into_iter()
            .map(|e| {
                let vars = VarSet::ordinary(&e.variables);
                let f = parse_terms(&vars, &e.terms.join(";"))?;
                if e.weights.len() != e.shifts.len() || e.weights.len() != e.variables.len() {
                    return Err(Error::Input(format!(
                        "entry {}: euler data length mismatch",
                        e.name
                    )));
                }
                let euler = e
                    .weights
                    .into_iter()
                    .zip(e.shifts)
                    .map(|(weight, shift)| EulerTerm { weight, shift })
                    .collect();
                Ok(CoxeterEntry {
                    name: e.name,
                    exponents: e.exponents,
                    spec: FrobeniusSpec::new(vars, f, euler, None)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { entries })
    }

    pub fn builtin() -> Catalog {
        Catalog::from_json(CATALOG_JSON).expect("embedded catalog is well-formed")
    }

    pub fn entries(&self) -> &[CoxeterEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CoxeterEntry> {
        self.entries
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Input(format!("no catalog entry `{name}`")))
    }

    /// Structural invariants of every entry: exponent pairing, antidiagonal
    /// metric, associativity, and scaling weight `2h + 2`.
    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            if !e.exponent_pairing_holds() {
                return Err(Error::Internal(format!(
                    "{}: exponent pairing violated",
                    e.name
                )));
            }
            let eta = metric_from_prepotential(&e.spec)?;
            if !eta.is_antidiagonal_ones() {
                return Err(Error::Internal(format!("{}: metric not antidiagonal", e.name)));
            }
            if !wdvv_check(&e.spec)?.pass {
                return Err(Error::Internal(format!("{}: associativity fails", e.name)));
            }
            let d_f = euler_check(&e.spec)?;
            let want = Rational::from_int(2 * e.coxeter_number() as i64 + 2);
            if d_f != want {
                return Err(Error::Internal(format!(
                    "{}: scaling weight {d_f}, expected {want}",
                    e.name
                )));
            }
        }
        Ok(())
    }
}

/// A member of the two-dimensional family of a catalog group.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub group: String,
    pub k: Vec<Rational>,
    pub map: SubmanifoldMap,
}

fn family_components(
    entry: &CoxeterEntry,
    target: &VarSet,
    k: &[PuiseuxPoly],
) -> Result<Vec<PuiseuxPoly>> {
    let m = entry.spec.dim();
    let d = entry.degrees();
    let h = entry.coxeter_number();
    let tau1 = PuiseuxPoly::var(target, "tau1")?;
    let tau2 = PuiseuxPoly::var(target, "tau2")?;
    let half_h = Rational::ratio(h as i64, 2);

    // t1 = tau1 - (1/4h) (sum_j k_j k_{m+1-j} d_j d_{m+1-j}) tau2^{h/2}
    let mut coeff_sum = PuiseuxPoly::zero(target);
    for j in 2..m {
        let dj = Rational::from_int(d[j - 1] as i64);
        let dconj = Rational::from_int(d[m - j] as i64);
        let t = (&k[j - 2] * &k[m - j - 1]).scale(&(&dj * &dconj));
        coeff_sum = &coeff_sum + &t;
    }
    let scale = Rational::ratio(-1, 4 * h as i64);
    let head = &coeff_sum.scale(&scale) * &tau2.pow_rational(&half_h)?;
    let t1 = &tau1 + &head;

    let mut comps = vec![t1];
    for j in 2..m {
        let e = Rational::ratio(d[j - 1] as i64, 2);
        comps.push(&k[j - 2] * &tau2.pow_rational(&e)?);
    }
    comps.push(tau2);
    Ok(comps)
}

/// Instantiate the family at rational constants `k` (length `m - 2`) and
/// check the guaranteed properties: unit off-diagonal induced metric and a
/// tangent Euler field.
pub fn build_family(entry: &CoxeterEntry, k: &[Rational]) -> Result<FamilyInstance> {
    let m = entry.spec.dim();
    if k.len() + 2 != m {
        return Err(Error::Input(format!(
            "{} needs {} family constants, got {}",
            entry.name,
            m - 2,
            k.len()
        )));
    }
    let target = VarSet::ordinary(&["tau1", "tau2"]);
    let k_polys: Vec<PuiseuxPoly> = k
        .iter()
        .map(|kv| PuiseuxPoly::constant(&target, kv.clone()))
        .collect();
    let comps = family_components(entry, &target, &k_polys)?;
    let map = SubmanifoldMap::new(entry.spec.vars().clone(), target, 2, comps)?;
    let ind = induce(&map, &entry.spec)?;
    let unit_off = ind.eta_n.get(0, 0).is_zero()
        && ind.eta_n.get(1, 1).is_zero()
        && ind.eta_n.get(0, 1).is_one();
    if !unit_off {
        return Err(Error::Internal(format!(
            "{}: family metric is not the unit off-diagonal form",
            entry.name
        )));
    }
    if !ind.euler_tangent {
        return Err(Error::Internal(format!(
            "{}: family Euler field is not tangent",
            entry.name
        )));
    }
    Ok(FamilyInstance {
        group: entry.name.clone(),
        k: k.to_vec(),
        map,
    })
}

/// Tangency residuals of the family with the `k_j` kept symbolic, reduced
/// to a finite set of polynomial conditions in the `k_j`.
///
/// Coefficients of each tau-monomial are taken as candidate conditions,
/// normalized to primitive integer form, and a candidate is dropped when
/// multivariate division by the already-kept conditions leaves remainder
/// zero (which certifies it is algebraically redundant).
pub fn naturality_conditions(entry: &CoxeterEntry) -> Result<Vec<PuiseuxPoly>> {
    let m = entry.spec.dim();
    let k_names: Vec<String> = (2..m).map(|j| format!("k{j}")).collect();
    let mut names = vec!["tau1".to_string(), "tau2".to_string()];
    names.extend(k_names.iter().cloned());
    let target = VarSet::ordinary(&names);
    let k_polys: Vec<PuiseuxPoly> = k_names
        .iter()
        .map(|kn| PuiseuxPoly::var(&target, kn))
        .collect::<Result<_>>()?;
    let comps = family_components(entry, &target, &k_polys)?;
    let map = SubmanifoldMap::new(entry.spec.vars().clone(), target.clone(), 2, comps)?;
    let ind = induce(&map, &entry.spec)?;

    let kvars = VarSet::ordinary(&k_names);
    let mut candidates: Vec<PuiseuxPoly> = Vec::new();
    for block in &ind.residuals {
        for comp in &block.components {
            for coeff in comp.coefficients_grouped_by(&["tau1", "tau2"])? {
                // re-home the k-coefficient into the parameter-only table
                let mut q = PuiseuxPoly::zero(&kvars);
                for (mono, c) in coeff.terms() {
                    let powers: Vec<(&str, Rational)> = k_names
                        .iter()
                        .map(|kn| {
                            let vi = target.index_of(kn).expect("own variable");
                            (kn.as_str(), mono.exponent(vi).clone())
                        })
                        .collect();
                    let term = PuiseuxPoly::monomial(&kvars, c.clone(), &powers)?;
                    q = &q + &term;
                }
                let q = q.primitive_part();
                if !q.is_zero() && !candidates.contains(&q) {
                    candidates.push(q);
                }
            }
        }
    }
    candidates.sort_by_key(|p| {
        (
            p.max_ordinary_degree()
                .and_then(|d| d.to_i64())
                .unwrap_or(i64::MAX),
            p.term_count(),
            p.to_string(),
        )
    });
    let mut kept: Vec<PuiseuxPoly> = Vec::new();
    for cand in candidates {
        if kept.is_empty() || !cand.reduces_to_zero_modulo(&kept) {
            kept.push(cand);
        }
    }
    Ok(kept)
}

/// Substitute each point into every condition; `true` means all vanish.
pub fn verify_natural_points(
    entry: &CoxeterEntry,
    points: &[Vec<Rational>],
) -> Result<Vec<bool>> {
    let conditions = naturality_conditions(entry)?;
    let m = entry.spec.dim();
    let k_names: Vec<String> = (2..m).map(|j| format!("k{j}")).collect();
    points
        .iter()
        .map(|point| {
            if point.len() != k_names.len() {
                return Err(Error::Input(format!(
                    "point has {} coordinates, expected {}",
                    point.len(),
                    k_names.len()
                )));
            }
            let assignment: std::collections::BTreeMap<String, Rational> = k_names
                .iter()
                .cloned()
                .zip(point.iter().cloned())
                .collect();
            for cond in &conditions {
                if !cond.evaluate(&assignment)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect()
}

/// Rational points known to satisfy the naturality conditions (the
/// irrational roots of the `A` series are certified through the factored
/// condition polynomial instead).
pub fn builtin_natural_points(name: &str) -> Vec<Vec<Rational>> {
    match name.to_ascii_uppercase().as_str() {
        "A3" => vec![vec![Rational::zero()]],
        "B3" => vec![
            vec![Rational::zero()],
            vec![Rational::ratio(-1, 2)],
            vec![Rational::ratio(3, 2)],
        ],
        "H3" => vec![
            vec![Rational::zero()],
            vec![Rational::one()],
            vec![Rational::ratio(-5, 27)],
        ],
        "F4" => vec![
            vec![Rational::zero(), Rational::zero()],
            vec![Rational::ratio(-1, 12), Rational::zero()],
            vec![Rational::ratio(-1, 36), Rational::ratio(1, 18)],
            vec![Rational::ratio(-1, 36), Rational::ratio(-1, 18)],
            vec![Rational::ratio(5, 12), Rational::ratio(1, 2)],
            vec![Rational::ratio(5, 12), Rational::ratio(-1, 2)],
        ],
        _ => vec![],
    }
}

/// Induced prepotential of a family instance, which must have the
/// two-term dihedral shape `tau1^2 tau2 / 2 + p tau2^{h+1}`; returns it
/// with the coefficient `p`.
pub fn induced_i2_prepotential(
    entry: &CoxeterEntry,
    instance: &FamilyInstance,
) -> Result<(PuiseuxPoly, Rational)> {
    let f_n = canonical_2d_prepotential(&instance.map, &entry.spec)?;
    let tgt = instance.map.target_vars().clone();
    let h = entry.coxeter_number();
    let head = parse_terms(&tgt, "1/2 tau1^2 tau2")?;
    let tail = &f_n - &head;
    let expected_tail_shape = parse_terms(&tgt, &format!("1 tau2^{}", h + 1))?;
    let p = if tail.is_zero() {
        Rational::zero()
    } else {
        tail.proportional_to(&expected_tail_shape).ok_or_else(|| {
            Error::Internal(format!(
                "{}: induced prepotential has unexpected shape {f_n}",
                entry.name
            ))
        })?
    };
    // quasihomogeneity under weights (h, 2): every term scales like 2h + 2
    let want = Rational::from_int(2 * h as i64 + 2);
    for (mono, _) in f_n.terms() {
        let w = &(mono.exponent(0) * &Rational::from_int(h as i64))
            + &(mono.exponent(1) * &Rational::from_int(2));
        if w != want {
            return Err(Error::Internal(format!(
                "{}: induced prepotential not quasihomogeneous",
                entry.name
            )));
        }
    }
    Ok((f_n, p))
}

/// Dihedral spec `t1^2 t2 / 2 + p t2^{h+1}` with Euler weights `(h, 2)`.
pub fn dihedral_spec(h: u32, p: &Rational) -> Result<FrobeniusSpec> {
    let vars = VarSet::ordinary(&["t1", "t2"]);
    let f = parse_terms(&vars, "1/2 t1^2 t2")?
        .checked_add(&parse_terms(&vars, &format!("1 t2^{}", h + 1))?.scale(p))?;
    FrobeniusSpec::new(
        vars,
        f,
        vec![
            EulerTerm { weight: Rational::from_int(h as i64), shift: Rational::zero() },
            EulerTerm { weight: Rational::from_int(2), shift: Rational::zero() },
        ],
        None,
    )
}

/// The unity line `tau -> (tau, 0, ..., 0)`: its induced product has the
/// single structure constant `c_11^{~1}`, which must be exactly one, with
/// every transverse component vanishing. This is the trivial
/// one-dimensional cubic structure.
pub fn unity_line_check(spec: &FrobeniusSpec) -> Result<bool> {
    let eta = metric_from_prepotential(spec)?;
    let c = structure_tensor(spec);
    let raised = raise_first_two(&c, &eta);
    let m = spec.dim();
    let tgt = VarSet::ordinary(&["tau1"]);
    let tau = PuiseuxPoly::var(&tgt, "tau1")?;
    let zero_bindings: std::collections::BTreeMap<String, PuiseuxPoly> = spec
        .vars()
        .names()
        .enumerate()
        .map(|(i, name)| {
            let img = if i == 0 { tau.clone() } else { PuiseuxPoly::zero(&tgt) };
            (name.to_string(), img)
        })
        .collect();
    for k in 0..m {
        let restricted = raised[0][0][k].substitute(&zero_bindings, &tgt)?;
        let want = if k == 0 {
            PuiseuxPoly::one(&tgt)
        } else {
            PuiseuxPoly::zero(&tgt)
        };
        if restricted != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Report for the nested sequence of natural submanifolds ending in the
/// one-dimensional cubic.
#[derive(Clone, Debug, serde::Serialize)]
pub struct NestedChainReport {
    /// Per B3 naturality root: `(k, p, natural)`.
    pub b3_instances: Vec<(Rational, Rational, bool)>,
    /// Exponent `h + 1` of the induced dihedral prepotentials.
    pub dihedral_exponent: u32,
    /// Unity-line verdicts for each induced dihedral spec and for the
    /// catalog dihedral entry.
    pub unity_line: Vec<bool>,
    pub pass: bool,
}

/// Verify the chain: B3 natural instances induce degree-7 dihedral
/// prepotentials, each of which hosts the trivial one-dimensional cubic
/// along its unity line.
pub fn nested_chain_check(catalog: &Catalog) -> Result<NestedChainReport> {
    let b3 = catalog.get("B3")?;
    let h = b3.coxeter_number();
    let mut b3_instances = Vec::new();
    let mut unity_line = Vec::new();
    let mut pass = true;
    for point in builtin_natural_points("B3") {
        let k = point[0].clone();
        let instance = build_family(b3, &point)?;
        let natural = induce(&instance.map, &b3.spec)?.natural;
        let (_, p) = induced_i2_prepotential(b3, &instance)?;
        if !natural || p.is_zero() {
            pass = false;
        }
        let dihedral = dihedral_spec(h, &p)?;
        let line_ok = unity_line_check(&dihedral)?;
        if !line_ok {
            pass = false;
        }
        unity_line.push(line_ok);
        b3_instances.push((k, p, natural));
    }
    let catalog_dihedral = catalog.get("I2(6)")?;
    let line_ok = unity_line_check(&catalog_dihedral.spec)?;
    if !line_ok {
        pass = false;
    }
    unity_line.push(line_ok);
    Ok(NestedChainReport {
        b3_instances,
        dihedral_exponent: h + 1,
        unity_line,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_validates() {
        let cat = Catalog::builtin();
        assert_eq!(cat.entries().len(), 6);
        cat.validate().unwrap();
    }

    #[test]
    fn family_displays_match_general_formula() {
        let cat = Catalog::builtin();
        // H3: t1 = tau1 - 9/10 k^2 tau2^5, t2 = k tau2^3
        let h3 = cat.get("H3").unwrap();
        let inst = build_family(h3, &[Rational::from_int(2)]).unwrap();
        let tgt = VarSet::ordinary(&["tau1", "tau2"]);
        assert_eq!(
            *inst.map.component(0),
            parse_terms(&tgt, "1 tau1; -18/5 tau2^5").unwrap()
        );
        assert_eq!(*inst.map.component(1), parse_terms(&tgt, "2 tau2^3").unwrap());
        // A3: t1 = tau1 - 9/16 k^2 tau2^2, t2 = k tau2^(3/2)
        let a3 = cat.get("A3").unwrap();
        let inst = build_family(a3, &[Rational::one()]).unwrap();
        assert_eq!(
            *inst.map.component(0),
            parse_terms(&tgt, "1 tau1; -9/16 tau2^2").unwrap()
        );
        assert_eq!(
            *inst.map.component(1),
            parse_terms(&tgt, "1 tau2^(3/2)").unwrap()
        );
        // F4: t1 = tau1 - 2 k2 k3 tau2^6, t2 = k2 tau2^4, t3 = k3 tau2^3
        let f4 = cat.get("F4").unwrap();
        let inst = build_family(f4, &[Rational::from_int(1), Rational::from_int(1)]).unwrap();
        assert_eq!(
            *inst.map.component(0),
            parse_terms(&tgt, "1 tau1; -2 tau2^6").unwrap()
        );
        assert_eq!(*inst.map.component(1), parse_terms(&tgt, "1 tau2^4").unwrap());
        assert_eq!(*inst.map.component(2), parse_terms(&tgt, "1 tau2^3").unwrap());
    }

    #[test]
    fn h3_condition_is_the_known_cubic() {
        let cat = Catalog::builtin();
        let conds = naturality_conditions(cat.get("H3").unwrap()).unwrap();
        assert_eq!(conds.len(), 1);
        let kv = VarSet::ordinary(&["k2"]);
        // k (k - 1) (27 k + 5) expanded
        let expect = parse_terms(&kv, "27 k2^3; -22 k2^2; -5 k2").unwrap();
        assert!(conds[0].proportional_to(&expect).is_some(), "{}", conds[0]);
    }

    #[test]
    fn a3_condition_has_the_irrational_roots_factored() {
        let cat = Catalog::builtin();
        let conds = naturality_conditions(cat.get("A3").unwrap()).unwrap();
        assert_eq!(conds.len(), 1);
        let kv = VarSet::ordinary(&["k2"]);
        // k (32 - 27 k^2)
        let expect = parse_terms(&kv, "32 k2; -27 k2^3").unwrap();
        assert!(conds[0].proportional_to(&expect).is_some(), "{}", conds[0]);
    }

    #[test]
    fn b3_condition_matches() {
        let cat = Catalog::builtin();
        let conds = naturality_conditions(cat.get("B3").unwrap()).unwrap();
        assert_eq!(conds.len(), 1);
        let kv = VarSet::ordinary(&["k2"]);
        // k (2k - 3) (-2k - 1) expanded: -4k^3 + 4k^2 + 3k
        let expect = parse_terms(&kv, "-4 k2^3; 4 k2^2; 3 k2").unwrap();
        assert!(conds[0].proportional_to(&expect).is_some(), "{}", conds[0]);
    }

    #[test]
    fn f4_conditions_match_the_pair() {
        let cat = Catalog::builtin();
        let conds = naturality_conditions(cat.get("F4").unwrap()).unwrap();
        assert_eq!(conds.len(), 2, "{conds:?}");
        let kv = VarSet::ordinary(&["k2", "k3"]);
        let c1 = parse_terms(&kv, "1 k2; 12 k2^2; 5 k3^2; -36 k2 k3^2").unwrap();
        let c2 = parse_terms(&kv, "1 k3; 36 k2 k3; -144 k2^2 k3; 36 k3^3").unwrap();
        for want in [c1, c2] {
            assert!(
                conds.iter().any(|c| c.proportional_to(&want).is_some()),
                "missing condition {want}; got {conds:?}"
            );
        }
    }

    #[test]
    fn f4_points_all_vanish() {
        let cat = Catalog::builtin();
        let f4 = cat.get("F4").unwrap();
        let verdicts = verify_natural_points(f4, &builtin_natural_points("F4")).unwrap();
        assert_eq!(verdicts, vec![true; 6]);
        // an off-variety point is nonzero
        let bad = verify_natural_points(f4, &[vec![Rational::one(), Rational::one()]]).unwrap();
        assert_eq!(bad, vec![false]);
    }

    #[test]
    fn h3_half_is_not_a_root() {
        let cat = Catalog::builtin();
        let v = verify_natural_points(cat.get("H3").unwrap(), &[vec![Rational::ratio(1, 2)]])
            .unwrap();
        assert_eq!(v, vec![false]);
    }

    #[test]
    fn induced_prepotentials_at_zero_match_restriction() {
        let cat = Catalog::builtin();
        for (name, p) in [
            ("A3", Rational::ratio(1, 60)),
            ("B3", Rational::ratio(1, 210)),
            ("H3", Rational::ratio(1, 3960)),
        ] {
            let entry = cat.get(name).unwrap();
            let inst = build_family(entry, &[Rational::zero()]).unwrap();
            let (f_n, got) = induced_i2_prepotential(entry, &inst).unwrap();
            assert_eq!(got, p, "{name}");
            // k = 0 is a plane: the induced prepotential is the plain
            // restriction of F
            let restricted = inst.map.restrict(entry.spec.prepotential()).unwrap();
            assert_eq!(f_n, restricted, "{name}");
        }
    }

    #[test]
    fn family_naturality_matches_condition_roots() {
        let cat = Catalog::builtin();
        for (name, k, expect) in [
            ("H3", Rational::one(), true),
            ("H3", Rational::ratio(-5, 27), true),
            ("H3", Rational::ratio(2, 3), false),
            ("B3", Rational::ratio(3, 2), true),
            ("B3", Rational::ratio(-1, 2), true),
            ("B3", Rational::one(), false),
            ("A3", Rational::zero(), true),
            ("A3", Rational::one(), false),
        ] {
            let entry = cat.get(name).unwrap();
            let inst = build_family(entry, std::slice::from_ref(&k)).unwrap();
            let natural = induce(&inst.map, &entry.spec).unwrap().natural;
            assert_eq!(natural, expect, "{name} at k = {k}");
        }
    }

    #[test]
    fn f4_family_natural_at_catalog_points() {
        let cat = Catalog::builtin();
        let f4 = cat.get("F4").unwrap();
        for point in builtin_natural_points("F4") {
            let inst = build_family(f4, &point).unwrap();
            assert!(induce(&inst.map, &f4.spec).unwrap().natural, "{point:?}");
        }
        let inst = build_family(f4, &[Rational::one(), Rational::ratio(1, 3)]).unwrap();
        assert!(!induce(&inst.map, &f4.spec).unwrap().natural);
    }

    #[test]
    fn nested_chain() {
        let cat = Catalog::builtin();
        let report = nested_chain_check(&cat).unwrap();
        assert!(report.pass);
        assert_eq!(report.dihedral_exponent, 7);
        assert_eq!(report.b3_instances.len(), 3);
        assert!(report.unity_line.iter().all(|&b| b));
        // H3 feeds a degree-11 dihedral prepotential
        let h3 = cat.get("H3").unwrap();
        let inst = build_family(h3, &[Rational::one()]).unwrap();
        let (f_n, _) = induced_i2_prepotential(h3, &inst).unwrap();
        let tgt = inst.map.target_vars().clone();
        let expect_shape = parse_terms(&tgt, "1 tau2^11").unwrap();
        let tail = &f_n - &parse_terms(&tgt, "1/2 tau1^2 tau2").unwrap();
        assert!(tail.proportional_to(&expect_shape).is_some());
    }

    #[test]
    fn unity_line_is_the_trivial_cubic_everywhere() {
        let cat = Catalog::builtin();
        for entry in cat.entries() {
            assert!(unity_line_check(&entry.spec).unwrap(), "{}", entry.name);
        }
    }

    #[test]
    fn normalized_charges_resolve_to_known_values() {
        let cat = Catalog::builtin();
        let h3 = cat.get("H3").unwrap();
        let (q, d) = h3.spec.normalized_charges().unwrap();
        assert_eq!(d, Rational::ratio(4, 5));
        assert_eq!(q[0], Rational::zero());
        assert_eq!(q[1], Rational::ratio(2, 5));
        assert_eq!(q[2], Rational::ratio(4, 5));
    }
}

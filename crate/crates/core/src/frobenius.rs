//! Frobenius-manifold structures built from a prepotential.
//!
//! A [`FrobeniusSpec`] bundles a prepotential `F` over `m` manifold
//! coordinates with Euler data `(d_i, r_i)` per coordinate. The metric is
//! `eta_ij = c_1ij`, the multiplication is given by the raised third
//! derivatives, and the checks below verify the defining axioms exactly:
//! WDVV associativity as polynomial identities, quasihomogeneity as a
//! weighted-degree count plus a full Lie-derivative comparison, and the
//! flat-pencil identity of the intersection form.
//!
//! Specs whose prepotential carries an exponential sector declare a
//! truncation order; identities are then asserted on every graded component
//! the truncation determines completely.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{PuiseuxPoly, VarSet};
use crate::scalar::Rational;

/// Constant symmetric nondegenerate matrix with its exact inverse cached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metric {
    entries: Vec<Vec<Rational>>,
    #[serde(skip)]
    inverse: Vec<Vec<Rational>>,
}

impl Metric {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::Input("metric matrix not square".into()));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Input("metric matrix not symmetric".into()));
                }
            }
        }
        let inverse = invert(&entries).ok_or(Error::DegenerateMetric)?;
        Ok(Metric { entries, inverse })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn inv(&self, i: usize, j: usize) -> &Rational {
        &self.inverse[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// Antidiagonal ones: `eta_ij = delta_{i+j,m+1}`.
    pub fn is_antidiagonal_ones(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if i + j == n - 1 { 1 } else { 0 };
                self.entries[i][j] == want
            })
        })
    }
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let s = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &s;
                let s = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &s;
            }
        }
    }
    Some(inv)
}

/// Totally symmetric rank-3 tensor of polynomials; only sorted index
/// triples are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), PuiseuxPoly>,
}

impl StructureTensor {
    pub fn new(dim: usize, vars: &VarSet) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..dim {
            for j in i..dim {
                for k in j..dim {
                    entries.insert((i, j, k), PuiseuxPoly::zero(vars));
                }
            }
        }
        StructureTensor { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn key(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
        let mut v = [i, j, k];
        v.sort_unstable();
        (v[0], v[1], v[2])
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &PuiseuxPoly {
        &self.entries[&Self::key(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, p: PuiseuxPoly) {
        self.entries.insert(Self::key(i, j, k), p);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &PuiseuxPoly)> {
        self.entries.iter()
    }
}

/// Euler datum per coordinate: `E^i = weight * t^i + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTerm {
    pub weight: Rational,
    pub shift: Rational,
}

/// A prepotential with its Euler data; the input to every check here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSpec {
    vars: VarSet,
    dim: usize,
    prepotential: PuiseuxPoly,
    euler: Vec<EulerTerm>,
    truncation: Option<u32>,
}

impl FrobeniusSpec {
    pub fn new(
        vars: VarSet,
        prepotential: PuiseuxPoly,
        euler: Vec<EulerTerm>,
        truncation: Option<u32>,
    ) -> Result<Self> {
        let dim = vars.ordinary_count();
        if dim == 0 {
            return Err(Error::Input("spec needs at least one coordinate".into()));
        }
        for i in 0..dim {
            if vars.is_exponential(i) {
                return Err(Error::Input(
                    "exponential carriers must come after the manifold coordinates".into(),
                ));
            }
        }
        if euler.len() != dim {
            return Err(Error::Input(format!(
                "euler data has {} entries for dimension {dim}",
                euler.len()
            )));
        }
        if prepotential.vars() != &vars {
            return Err(Error::VariableMismatch(
                "prepotential is over a different variable table".into(),
            ));
        }
        Ok(FrobeniusSpec {
            vars,
            dim,
            prepotential,
            euler,
            truncation,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn prepotential(&self) -> &PuiseuxPoly {
        &self.prepotential
    }

    pub fn euler(&self) -> &[EulerTerm] {
        &self.euler
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn coordinate_name(&self, i: usize) -> &str {
        self.vars.info(i).name.as_str()
    }

    /// Components `E^i = d_i t^i + r^i` as polynomials.
    pub fn euler_components(&self) -> Vec<PuiseuxPoly> {
        (0..self.dim)
            .map(|i| {
                let t = PuiseuxPoly::var(&self.vars, self.coordinate_name(i)).expect("own var");
                let lin = t.scale(&self.euler[i].weight);
                let shift = PuiseuxPoly::constant(&self.vars, self.euler[i].shift.clone());
                lin.checked_add(&shift).expect("same vars")
            })
            .collect()
    }

    /// Truncate to the spec's exponential grading order, when one is set.
    pub fn truncated(&self, p: &PuiseuxPoly) -> PuiseuxPoly {
        match self.truncation {
            Some(n) => p.truncate_exp_degree(n),
            None => p.clone(),
        }
    }

    /// Normalized charges `(q_i, d)` in the convention where the unity
    /// weight is 1: `q_i = 1 - d_i/d_1`, `d = 3 - d_F/d_1`. Read-only
    /// companion data; no check in this crate consumes it.
    pub fn normalized_charges(&self) -> Result<(Vec<Rational>, Rational)> {
        let d1 = self.euler[0].weight.clone();
        if d1.is_zero() {
            return Err(Error::Input("unity weight is zero".into()));
        }
        let q = self
            .euler
            .iter()
            .map(|e| Rational::one() - &(&e.weight / &d1))
            .collect();
        let d_f = euler_check(self)?;
        Ok((q, Rational::from_int(3) - &(&d_f / &d1)))
    }
}

/// On-disk JSON shape for a spec: named variables, a readable term list,
/// and Euler data. Exponential carriers are `(name, base)` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub variables: Vec<String>,
    #[serde(default)]
    pub exponential_variables: Vec<(String, String)>,
    pub terms: Vec<String>,
    pub weights: Vec<Rational>,
    #[serde(default)]
    pub shifts: Vec<Rational>,
    #[serde(default)]
    pub truncation: Option<u32>,
}

impl FrobeniusSpec {
    pub fn from_file_json(text: &str) -> Result<FrobeniusSpec> {
        let file: SpecFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("bad spec file: {e}")))?;
        let mut vars = crate::poly::VarSet::ordinary(&file.variables);
        for (name, base) in &file.exponential_variables {
            vars = vars.with_exponential(name, base)?;
        }
        let f = crate::poly::parse_terms(&vars, &file.terms.join(";"))?;
        let shifts = if file.shifts.is_empty() {
            vec![Rational::zero(); file.weights.len()]
        } else {
            file.shifts.clone()
        };
        if shifts.len() != file.weights.len() {
            return Err(Error::Input("weights and shifts lengths differ".into()));
        }
        let euler = file
            .weights
            .iter()
            .cloned()
            .zip(shifts)
            .map(|(weight, shift)| EulerTerm { weight, shift })
            .collect();
        FrobeniusSpec::new(vars, f, euler, file.truncation)
    }
}

/// Third derivatives `c_ijk` of the prepotential.
pub fn structure_tensor(spec: &FrobeniusSpec) -> StructureTensor {
    let m = spec.dim();
    let mut out = StructureTensor::new(m, spec.vars());
    let mut first: Vec<PuiseuxPoly> = Vec::with_capacity(m);
    for i in 0..m {
        first.push(spec.prepotential.diff(spec.coordinate_name(i)).expect("own var"));
    }
    for i in 0..m {
        for j in i..m {
            let second = first[i].diff(spec.coordinate_name(j)).expect("own var");
            for k in j..m {
                let third = second.diff(spec.coordinate_name(k)).expect("own var");
                out.set(i, j, k, third);
            }
        }
    }
    out
}

/// `eta_ij = c_1ij`; fails when any entry is non-constant or the matrix is
/// singular.
pub fn metric_from_prepotential(spec: &FrobeniusSpec) -> Result<Metric> {
    let c = structure_tensor(spec);
    let m = spec.dim();
    let mut entries = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let e = c.get(0, i, j);
            let value = e.as_constant().ok_or_else(|| {
                Error::NormalizationViolated(format!(
                    "c_1{}{} = {} is not constant",
                    i + 1,
                    j + 1,
                    e
                ))
            })?;
            entries[i][j] = value.clone();
            entries[j][i] = value;
        }
    }
    Metric::new(entries)
}

/// Outcome of an exact identity check, with the first failing witness.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub residual: String,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { pass: true, witness: None }
    }

    pub fn fail(indices: Vec<usize>, residual: &PuiseuxPoly) -> Self {
        Verdict {
            pass: false,
            witness: Some(Witness {
                indices,
                residual: residual.to_string(),
            }),
        }
    }
}

/// WDVV associativity as exact polynomial identities:
/// `sum_l c_ijl eta^lm c_mkn` must be symmetric under `i <-> k`.
pub fn wdvv_check(spec: &FrobeniusSpec) -> Result<Verdict> {
    let eta = metric_from_prepotential(spec)?;
    let c = structure_tensor(spec);
    Ok(wdvv_check_with(spec, &c, &eta))
}

pub(crate) fn wdvv_check_with(spec: &FrobeniusSpec, c: &StructureTensor, eta: &Metric) -> Verdict {
    let m = spec.dim();
    let raised = raise_first_two(c, eta);
    for i in 0..m {
        for k in (i + 1)..m {
            for j in 0..m {
                for n in j..m {
                    // sum_l c_{ij}^{~l} c_{lkn} - (i <-> k)
                    let mut residual = PuiseuxPoly::zero(spec.vars());
                    for l in 0..m {
                        let a = &raised[i][j][l] * c.get(l, k, n);
                        let b = &raised[k][j][l] * c.get(l, i, n);
                        residual = &residual + &(&a - &b);
                    }
                    residual = spec.truncated(&residual);
                    if !residual.is_zero() {
                        return Verdict::fail(vec![i, j, k, n], &residual);
                    }
                }
            }
        }
    }
    Verdict::pass()
}

/// `c_{ij}^{~k} = eta^{kl} c_{ijl}` tabulated as `[i][j][k]`.
pub(crate) fn raise_first_two(c: &StructureTensor, eta: &Metric) -> Vec<Vec<Vec<PuiseuxPoly>>> {
    let m = c.dim();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..m)
                        .map(|k| {
                            let mut acc: Option<PuiseuxPoly> = None;
                            for l in 0..m {
                                let w = eta.inv(k, l);
                                if w.is_zero() {
                                    continue;
                                }
                                let t = c.get(i, j, l).scale(w);
                                acc = Some(match acc {
                                    Some(a) => &a + &t,
                                    None => t,
                                });
                            }
                            acc.unwrap_or_else(|| PuiseuxPoly::zero(c.get(0, 0, 0).vars()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Quasihomogeneity. Determines the scaling weight `d_F` from the
/// cubic-and-higher part of `F` (every such monomial must have the same
/// weighted degree) and confirms `L_E F - d_F F` consists of plain
/// monomials of total degree at most two.
pub fn euler_check(spec: &FrobeniusSpec) -> Result<Rational> {
    let vars = spec.vars();
    let two = Rational::from_int(2);

    // weighted degree per monomial: sum d_i a_i over coordinates plus
    // sum r_base * grade over exponential carriers
    let mut d_f: Option<Rational> = None;
    for (mono, _) in spec.prepotential.terms() {
        let mut w = Rational::zero();
        let mut poly_degree = Rational::zero();
        let mut grade = Rational::zero();
        let mut plain = true;
        for (i, e) in mono.exponents().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if vars.is_exponential(i) {
                grade += e;
                let base = match &vars.info(i).kind {
                    crate::poly::VarKind::Exponential { base } => base.clone(),
                    _ => unreachable!(),
                };
                let bi = vars.index_of(&base).expect("validated base");
                w += &(&spec.euler[bi].shift * e);
            } else {
                poly_degree += e;
                if i < spec.dim() {
                    w += &(&spec.euler[i].weight * e);
                }
                if !e.is_integer() || e.is_negative() {
                    plain = false;
                }
            }
        }
        let exempt = grade.is_zero() && plain && poly_degree <= two;
        if exempt {
            continue;
        }
        match &d_f {
            None => d_f = Some(w),
            Some(prev) if *prev == w => {}
            Some(prev) => {
                return Err(Error::NotQuasihomogeneous(format!(
                    "weighted degrees {prev} and {w} disagree (offending monomial degree {poly_degree})"
                )))
            }
        }
    }
    let d_f = d_f.ok_or_else(|| {
        Error::NotQuasihomogeneous("no cubic-or-higher monomials to fix d_F".into())
    })?;

    // full Lie derivative: L_E F - d_F F must be an at-most-quadratic
    // plain polynomial with no exponential grade
    let mut lie = PuiseuxPoly::zero(vars);
    let e_comps = spec.euler_components();
    for i in 0..spec.dim() {
        let df = spec.prepotential.diff(spec.coordinate_name(i))?;
        lie = &lie + &(&e_comps[i] * &df);
    }
    let resid = &lie - &spec.prepotential.scale(&d_f);
    for (mono, c) in resid.terms() {
        let grade = resid.exp_degree(mono);
        let mut deg = Rational::zero();
        let mut plain = true;
        for (i, e) in mono.exponents().iter().enumerate() {
            if vars.is_exponential(i) {
                continue;
            }
            deg += e;
            if !e.is_integer() || e.is_negative() {
                plain = false;
            }
        }
        if !grade.is_zero() || !plain || deg > two {
            return Err(Error::NotQuasihomogeneous(format!(
                "Lie-derivative residual keeps non-quadratic term {c} at degree {deg}"
            )));
        }
    }
    Ok(d_f)
}

/// Intersection form `g^{ij} = c^{ij}_{~k} Ehat^k` where `Ehat = E / d_1`
/// (the Euler field rescaled so the unity direction has weight one; the
/// catalog stores raw degrees). Also verifies `d g^{ij} / d t^1 = eta^{ij}`
/// exactly.
pub fn intersection_form(spec: &FrobeniusSpec) -> Result<Vec<Vec<PuiseuxPoly>>> {
    let eta = metric_from_prepotential(spec)?;
    let c = structure_tensor(spec);
    let d1 = spec.euler[0].weight.clone();
    if d1.is_zero() {
        return Err(Error::Input("unity weight is zero".into()));
    }
    let e_comps = spec.euler_components();
    let g = intersection_form_with(spec, &c, &eta, &e_comps, &d1);
    for (i, row) in g.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let d = spec.truncated(&entry.diff(spec.coordinate_name(0))?);
            if d.as_constant() != Some(eta.inv(i, j).clone()) {
                return Err(Error::Internal(format!(
                    "d g^{}{} / d t1 = {} but eta^{}{} = {}",
                    i + 1,
                    j + 1,
                    d,
                    i + 1,
                    j + 1,
                    eta.inv(i, j)
                )));
            }
        }
    }
    Ok(g)
}

pub(crate) fn intersection_form_with(
    spec: &FrobeniusSpec,
    c: &StructureTensor,
    eta: &Metric,
    euler_components: &[PuiseuxPoly],
    d1: &Rational,
) -> Vec<Vec<PuiseuxPoly>> {
    let m = spec.dim();
    let mut g = vec![vec![PuiseuxPoly::zero(spec.vars()); m]; m];
    let inv_d1 = d1.recip().expect("nonzero unity weight");
    for i in 0..m {
        for j in i..m {
            let mut acc = PuiseuxPoly::zero(spec.vars());
            for a in 0..m {
                for b in 0..m {
                    let w = eta.inv(i, a) * eta.inv(j, b);
                    if w.is_zero() {
                        continue;
                    }
                    for k in 0..m {
                        let t = &c.get(a, b, k).scale(&w) * &euler_components[k];
                        acc = &acc + &t;
                    }
                }
            }
            acc = spec.truncated(&acc.scale(&inv_d1));
            g[i][j] = acc.clone();
            g[j][i] = acc;
        }
    }
    g
}

/// A finite-dimensional commutative algebra candidate given by raised
/// structure constants `c_{ij}^{~k}`.
#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra {
    dim: usize,
    /// `c[i][j][k]` is the `e_k` component of `e_i . e_j`.
    c: Vec<Vec<Vec<Rational>>>,
}

impl FrobeniusAlgebra {
    pub fn new(c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = c.len();
        for plane in &c {
            if plane.len() != dim || plane.iter().any(|row| row.len() != dim) {
                return Err(Error::Input("structure constant array not cubical".into()));
            }
        }
        Ok(FrobeniusAlgebra { dim, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraVerdict {
    pub pass: bool,
    pub reason: Option<String>,
}

/// Checks the Frobenius property for the trace form
/// `eta_ij = c_{ij}^{~k} c_{kl}^{~l}`: commutativity, nondegeneracy of the
/// trace form, total symmetry of the lowered tensor, and
/// `<a.b, c> = <a, b.c>` on basis vectors.
pub fn frobenius_algebra_check(alg: &FrobeniusAlgebra) -> AlgebraVerdict {
    let n = alg.dim;
    let c = &alg.c;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if c[i][j][k] != c[j][i][k] {
                    return AlgebraVerdict {
                        pass: false,
                        reason: Some(format!("not commutative at ({i},{j},{k})")),
                    };
                }
            }
        }
    }
    // trace of left multiplication by e_k
    let trace: Vec<Rational> = (0..n)
        .map(|k| {
            let mut t = Rational::zero();
            for l in 0..n {
                t += &c[k][l][l];
            }
            t
        })
        .collect();
    let mut eta = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut e = Rational::zero();
            for k in 0..n {
                e += &(&c[i][j][k] * &trace[k]);
            }
            eta[i][j] = e;
        }
    }
    if invert(&eta).is_none() {
        return AlgebraVerdict {
            pass: false,
            reason: Some("trace form degenerate".into()),
        };
    }
    // lowered tensor must be totally symmetric
    let low = |i: usize, j: usize, k: usize| -> Rational {
        let mut v = Rational::zero();
        for l in 0..n {
            v += &(&eta[k][l] * &c[i][j][l]);
        }
        v
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = low(i, j, k);
                if a != low(i, k, j) || a != low(k, j, i) {
                    return AlgebraVerdict {
                        pass: false,
                        reason: Some(format!("c_ijk not totally symmetric at ({i},{j},{k})")),
                    };
                }
            }
        }
    }
    AlgebraVerdict { pass: true, reason: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_terms;

    fn spec3(f: &str, weights: [i64; 3]) -> FrobeniusSpec {
        let vars = VarSet::ordinary(&["t1", "t2", "t3"]);
        let p = parse_terms(&vars, f).unwrap();
        let euler = weights
            .iter()
            .map(|&w| EulerTerm {
                weight: Rational::from_int(w),
                shift: Rational::zero(),
            })
            .collect();
        FrobeniusSpec::new(vars, p, euler, None).unwrap()
    }

    fn a3() -> FrobeniusSpec {
        spec3(
            "1/2 t1^2 t3; 1/2 t1 t2^2; 1/4 t2^2 t3^2; 1/60 t3^5",
            [4, 3, 2],
        )
    }

    #[test]
    fn a3_structure_tensor_entries() {
        let c = structure_tensor(&a3());
        let v = a3().vars().clone();
        assert_eq!(*c.get(0, 0, 2), PuiseuxPoly::one(&v));
        assert_eq!(*c.get(0, 1, 1), PuiseuxPoly::one(&v));
        assert_eq!(*c.get(1, 1, 2), parse_terms(&v, "1 t3").unwrap());
        assert_eq!(*c.get(1, 2, 2), parse_terms(&v, "1 t2").unwrap());
        assert_eq!(*c.get(2, 2, 2), parse_terms(&v, "1 t3^2").unwrap());
        assert!(c.get(0, 0, 0).is_zero());
    }

    #[test]
    fn trivial_2d_structure_tensor() {
        let vars = VarSet::ordinary(&["t1", "t2"]);
        let p = parse_terms(&vars, "1/2 t1^2 t2").unwrap();
        let spec = FrobeniusSpec::new(
            vars.clone(),
            p,
            vec![
                EulerTerm { weight: Rational::from_int(3), shift: Rational::zero() },
                EulerTerm { weight: Rational::from_int(2), shift: Rational::zero() },
            ],
            None,
        )
        .unwrap();
        let c = structure_tensor(&spec);
        assert_eq!(*c.get(0, 0, 1), PuiseuxPoly::one(&vars));
        assert!(c.get(0, 0, 0).is_zero());
        assert!(c.get(1, 1, 1).is_zero());
    }

    #[test]
    fn a2_c222() {
        let vars = VarSet::ordinary(&["t1", "t2"]);
        let p = parse_terms(&vars, "1/2 t1^2 t2; 1 t2^4").unwrap();
        let spec = FrobeniusSpec::new(
            vars.clone(),
            p,
            vec![
                EulerTerm { weight: Rational::from_int(3), shift: Rational::zero() },
                EulerTerm { weight: Rational::from_int(2), shift: Rational::zero() },
            ],
            None,
        )
        .unwrap();
        let c = structure_tensor(&spec);
        assert_eq!(*c.get(1, 1, 1), parse_terms(&vars, "24 t2").unwrap());
    }

    #[test]
    fn a3_metric_is_antidiagonal() {
        let eta = metric_from_prepotential(&a3()).unwrap();
        assert!(eta.is_antidiagonal_ones());
    }

    #[test]
    fn constant_non_antidiagonal_metric_is_accepted() {
        let spec = spec3("1/2 t1^2 t2; 1 t1 t2^2", [1, 1, 1]);
        let eta = metric_from_prepotential(&spec);
        // c_112 = 1, c_122 = 2: constant, but this 3x3 metric (third
        // coordinate untouched) is singular
        assert!(matches!(eta, Err(Error::DegenerateMetric)));
        let vars = VarSet::ordinary(&["t1", "t2"]);
        let p = parse_terms(&vars, "1/2 t1^2 t2; 1 t1 t2^2").unwrap();
        let spec = FrobeniusSpec::new(
            vars,
            p,
            vec![
                EulerTerm { weight: Rational::one(), shift: Rational::zero() },
                EulerTerm { weight: Rational::one(), shift: Rational::zero() },
            ],
            None,
        )
        .unwrap();
        let eta = metric_from_prepotential(&spec).unwrap();
        assert_eq!(*eta.get(1, 1), Rational::from_int(2));
        assert!(!eta.is_antidiagonal_ones());
    }

    #[test]
    fn non_constant_metric_entry_is_rejected() {
        let spec = spec3("1/2 t1^2 t3; 1 t1^2 t2^2", [1, 1, 1]);
        assert!(matches!(
            metric_from_prepotential(&spec),
            Err(Error::NormalizationViolated(_))
        ));
    }

    #[test]
    fn a3_wdvv_passes_and_mutation_fails() {
        assert!(wdvv_check(&a3()).unwrap().pass);
        let mutated = spec3(
            "1/2 t1^2 t3; 1/2 t1 t2^2; 1/4 t2^2 t3^2; 1/30 t3^5",
            [4, 3, 2],
        );
        let verdict = wdvv_check(&mutated).unwrap();
        assert!(!verdict.pass);
        assert!(verdict.witness.is_some());
    }

    #[test]
    fn two_dimensional_wdvv_is_vacuous() {
        let vars = VarSet::ordinary(&["t1", "t2"]);
        let p = parse_terms(&vars, "1/2 t1^2 t2; 5 t2^7; -3 t2^4").unwrap();
        let spec = FrobeniusSpec::new(
            vars,
            p,
            vec![
                EulerTerm { weight: Rational::one(), shift: Rational::zero() },
                EulerTerm { weight: Rational::one(), shift: Rational::zero() },
            ],
            None,
        )
        .unwrap();
        assert!(wdvv_check(&spec).unwrap().pass);
    }

    #[test]
    fn a3_scaling_weight() {
        assert_eq!(euler_check(&a3()).unwrap(), Rational::from_int(10));
    }

    #[test]
    fn inconsistent_weights_are_reported() {
        let spec = spec3("1/2 t1^2 t3; 1 t3^5; 1 t3^4", [4, 3, 2]);
        assert!(matches!(
            euler_check(&spec),
            Err(Error::NotQuasihomogeneous(_))
        ));
    }

    #[test]
    fn a2_intersection_form() {
        let vars = VarSet::ordinary(&["t1", "t2"]);
        let p = parse_terms(&vars, "1/2 t1^2 t2; 1 t2^4").unwrap();
        let spec = FrobeniusSpec::new(
            vars.clone(),
            p,
            vec![
                EulerTerm { weight: Rational::from_int(3), shift: Rational::zero() },
                EulerTerm { weight: Rational::from_int(2), shift: Rational::zero() },
            ],
            None,
        )
        .unwrap();
        let g = intersection_form(&spec).unwrap();
        assert_eq!(g[0][0], parse_terms(&vars, "16 t2^2").unwrap());
        assert_eq!(g[0][1], parse_terms(&vars, "1 t1").unwrap());
        assert_eq!(g[1][1], parse_terms(&vars, "2/3 t2").unwrap());
        assert_eq!(g[0][1], g[1][0]);
    }

    #[test]
    fn spec_file_round_trip_with_exponential_sector() {
        let text = r#"{
            "variables": ["t1", "t2", "t3"],
            "exponential_variables": [["q2", "t2"]],
            "terms": ["1/2 t1^2 t3", "1/2 t1 t2^2", "1/2 t3^2 q2"],
            "weights": ["1", "0", "-1"],
            "shifts": ["0", "3", "0"],
            "truncation": 1
        }"#;
        let spec = FrobeniusSpec::from_file_json(text).unwrap();
        assert_eq!(spec.dim(), 3);
        assert_eq!(spec.truncation(), Some(1));
        assert_eq!(euler_check(&spec).unwrap(), Rational::one());
        // weights/shift length mismatch is rejected
        let bad = text.replace(r#""shifts": ["0", "3", "0"],"#, r#""shifts": ["0"],"#);
        assert!(FrobeniusSpec::from_file_json(&bad).is_err());
    }

    #[test]
    fn jordan_algebra_is_frobenius() {
        // e1.ei = ei; ei.ei = -e1 for i >= 2; 0 otherwise
        let n = 3;
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            c[0][i][i] = Rational::one();
            c[i][0][i] = Rational::one();
        }
        for i in 1..n {
            c[i][i][0] = -Rational::one();
        }
        c[0][0][0] = Rational::one();
        let alg = FrobeniusAlgebra::new(c).unwrap();
        assert!(frobenius_algebra_check(&alg).pass);
    }

    #[test]
    fn one_dimensional_algebra_passes() {
        let alg = FrobeniusAlgebra::new(vec![vec![vec![Rational::one()]]]).unwrap();
        assert!(frobenius_algebra_check(&alg).pass);
    }

    #[test]
    fn lopsided_algebra_fails() {
        // only e1.e2 = e1 (not even commutative)
        let n = 2;
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        c[0][1][0] = Rational::one();
        let alg = FrobeniusAlgebra::new(c).unwrap();
        let v = frobenius_algebra_check(&alg);
        assert!(!v.pass);
    }
}

//! Parametrized submanifolds and their induced structures.
//!
//! A [`SubmanifoldMap`] gives the ambient coordinates as polynomials in the
//! submanifold coordinates. From it we pull back the metric and the
//! multiplication, project the Euler field, and measure how far the ambient
//! product of tangent vectors sticks out of the tangent space: the
//! *tangency residuals*. The submanifold is natural exactly when every
//! residual vanishes identically; this criterion needs no normal frame and
//! works in any codimension.
//!
//! Normal frames and second fundamental forms are constructed only in
//! codimension one, by the exact cofactor construction, where the
//! Gauss-Codazzi integrability equations can then be checked as polynomial
//! identities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{
    euler_check, intersection_form, metric_from_prepotential, raise_first_two, structure_tensor,
    FrobeniusSpec, Metric, StructureTensor,
};
use crate::poly::{PuiseuxPoly, VarSet};
use crate::scalar::Rational;

/// Parametrization `t^i = t^i(tau^1..tau^n)`.
///
/// The first `n` ordinary target variables are submanifold coordinates;
/// any further ordinary variables are symbolic constants (family
/// parameters). `components` holds one polynomial per ambient variable,
/// exponential carriers included.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubmanifoldMap {
    ambient: VarSet,
    target: VarSet,
    n: usize,
    components: Vec<PuiseuxPoly>,
}

#[derive(Deserialize)]
struct MapRepr {
    ambient: VarSet,
    target: VarSet,
    n: usize,
    components: Vec<PuiseuxPoly>,
}

impl<'de> Deserialize<'de> for SubmanifoldMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MapRepr::deserialize(d)?;
        SubmanifoldMap::new(r.ambient, r.target, r.n, r.components)
            .map_err(serde::de::Error::custom)
    }
}

impl SubmanifoldMap {
    pub fn new(
        ambient: VarSet,
        target: VarSet,
        n: usize,
        components: Vec<PuiseuxPoly>,
    ) -> Result<Self> {
        if components.len() != ambient.len() {
            return Err(Error::Input(format!(
                "{} components for {} ambient variables",
                components.len(),
                ambient.len()
            )));
        }
        if n == 0 || n > target.ordinary_count() {
            return Err(Error::Input(format!(
                "submanifold dimension {n} out of range"
            )));
        }
        for c in &components {
            if c.vars() != &target {
                return Err(Error::VariableMismatch(
                    "component over a different target table".into(),
                ));
            }
        }
        Ok(SubmanifoldMap {
            ambient,
            target,
            n,
            components,
        })
    }

    pub fn ambient_vars(&self) -> &VarSet {
        &self.ambient
    }

    pub fn target_vars(&self) -> &VarSet {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, i: usize) -> &PuiseuxPoly {
        &self.components[i]
    }

    pub fn coordinate_name(&self, alpha: usize) -> &str {
        self.target.info(alpha).name.as_str()
    }

    /// Bindings `ambient variable -> image polynomial` for substitution.
    pub fn bindings(&self) -> BTreeMap<String, PuiseuxPoly> {
        self.ambient
            .names()
            .zip(&self.components)
            .map(|(n, p)| (n.to_string(), p.clone()))
            .collect()
    }

    /// Restrict an ambient polynomial to the submanifold.
    pub fn restrict(&self, p: &PuiseuxPoly) -> Result<PuiseuxPoly> {
        p.substitute(&self.bindings(), &self.target)
    }

    /// `J[i][alpha] = d t^i / d tau^alpha` over the manifold components.
    pub fn jacobian(&self, ambient_dim: usize) -> Result<Vec<Vec<PuiseuxPoly>>> {
        (0..ambient_dim)
            .map(|i| {
                (0..self.n)
                    .map(|a| self.components[i].diff(self.coordinate_name(a)))
                    .collect()
            })
            .collect()
    }

    /// Jacobian rank at one prime-power point and one seeded pseudo-random
    /// rational point; errors when both drop below `n`.
    pub fn check_rank(&self, ambient_dim: usize) -> Result<()> {
        use rand::{Rng, SeedableRng};
        let j = self.jacobian(ambient_dim)?;
        // exponent denominators per target variable; points are exact
        // L-th powers so half-integer exponents evaluate exactly
        let nv = self.target.len();
        let mut lcm = vec![1u32; nv];
        for row in &j {
            for p in row {
                for (m, _) in p.terms() {
                    for (v, e) in m.exponents().iter().enumerate() {
                        use num_integer::Integer;
                        use num_traits::ToPrimitive;
                        let d = e.denom().to_u32().unwrap_or(1);
                        lcm[v] = (lcm[v] as u64).lcm(&(d as u64)) as u32;
                    }
                }
            }
        }
        const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        let prime_point: BTreeMap<String, Rational> = self
            .target
            .names()
            .enumerate()
            .map(|(v, name)| {
                let base = Rational::from_int(PRIMES[v % PRIMES.len()]);
                (name.to_string(), base.pow_int(lcm[v] as i64).unwrap())
            })
            .collect();
        if self.rank_at(&j, &prime_point)? >= self.n {
            return Ok(());
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_f06b);
        let random_point: BTreeMap<String, Rational> = self
            .target
            .names()
            .enumerate()
            .map(|(v, name)| {
                let base = Rational::ratio(rng.gen_range(2..60), rng.gen_range(1..20));
                (name.to_string(), base.pow_int(lcm[v] as i64).unwrap())
            })
            .collect();
        if self.rank_at(&j, &random_point)? >= self.n {
            return Ok(());
        }
        Err(Error::RankDeficient(format!(
            "Jacobian rank below {} at both test points",
            self.n
        )))
    }

    fn rank_at(
        &self,
        j: &[Vec<PuiseuxPoly>],
        point: &BTreeMap<String, Rational>,
    ) -> Result<usize> {
        let mut rows: Vec<Vec<Rational>> = j
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(point)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut rank = 0;
        let cols = self.n;
        for col in 0..cols {
            if let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                rows.swap(rank, pivot);
                let p = rows[rank][col].clone();
                for r in (rank + 1)..rows.len() {
                    if rows[r][col].is_zero() {
                        continue;
                    }
                    let f = &rows[r][col] / &p;
                    for cc in col..cols {
                        let s = &rows[rank][cc] * &f;
                        rows[r][cc] = &rows[r][cc] - &s;
                    }
                }
                rank += 1;
            }
        }
        Ok(rank)
    }
}

/// Everything induced on the submanifold in one pass.
#[derive(Clone, Debug)]
pub struct InducedStructure {
    pub eta_n: Metric,
    /// Lowered induced structure functions over the tau variables.
    pub c_n: StructureTensor,
    /// Components of the projected Euler field.
    pub euler_n: Vec<PuiseuxPoly>,
    /// Per pair `alpha <= beta`, the ambient components of
    /// `(d_alpha o d_beta) - (d_alpha * d_beta)`.
    pub residuals: Vec<ResidualBlock>,
    pub natural: bool,
    pub euler_tangent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualBlock {
    pub alpha: usize,
    pub beta: usize,
    pub components: Vec<PuiseuxPoly>,
}

fn truncated(spec: &FrobeniusSpec, p: PuiseuxPoly) -> PuiseuxPoly {
    match spec.truncation() {
        Some(n) => p.truncate_exp_degree(n),
        None => p,
    }
}

/// Compute metric, multiplication, residuals and Euler projection for a
/// parametrized submanifold of `spec`.
pub fn induce(map: &SubmanifoldMap, spec: &FrobeniusSpec) -> Result<InducedStructure> {
    let m = spec.dim();
    let n = map.n();
    if map.ambient_vars() != spec.vars() {
        return Err(Error::VariableMismatch(
            "map ambient table differs from spec".into(),
        ));
    }
    map.check_rank(m)?;

    let eta = metric_from_prepotential(spec)?;
    let c = structure_tensor(spec);
    let j = map.jacobian(m)?;

    // induced metric must be constant: these are flat coordinates
    let mut eta_entries = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in a..n {
            let mut acc = PuiseuxPoly::zero(map.target_vars());
            for i in 0..m {
                for jj in 0..m {
                    if eta.get(i, jj).is_zero() {
                        continue;
                    }
                    let t = (&j[i][a] * &j[jj][b]).scale(eta.get(i, jj));
                    acc = &acc + &t;
                }
            }
            let v = acc.as_constant().ok_or_else(|| {
                Error::NotFlatCoordinates(format!("eta_{}{} = {}", a + 1, b + 1, acc))
            })?;
            eta_entries[a][b] = v.clone();
            eta_entries[b][a] = v;
        }
    }
    let eta_n = Metric::new(eta_entries)?;

    // restricted lowered and raised ambient structure functions
    let mut c_sub = StructureTensor::new(m, map.target_vars());
    for i in 0..m {
        for jj in i..m {
            for k in jj..m {
                c_sub.set(i, jj, k, truncated(spec, map.restrict(c.get(i, jj, k))?));
            }
        }
    }
    let raised = raise_first_two(&c, &eta);
    let mut raised_sub = vec![vec![vec![PuiseuxPoly::zero(map.target_vars()); m]; m]; m];
    for i in 0..m {
        for jj in 0..m {
            for k in 0..m {
                raised_sub[i][jj][k] = truncated(spec, map.restrict(&raised[i][jj][k])?);
            }
        }
    }

    // induced multiplication: triple pullback of the lowered tensor
    let mut c_n = StructureTensor::new(n, map.target_vars());
    for a in 0..n {
        for b in a..n {
            for g in b..n {
                let mut acc = PuiseuxPoly::zero(map.target_vars());
                for i in 0..m {
                    for jj in 0..m {
                        for k in 0..m {
                            let base = c_sub.get(i, jj, k);
                            if base.is_zero() {
                                continue;
                            }
                            let t = &(&j[i][a] * &j[jj][b]) * &(&j[k][g] * base);
                            acc = &acc + &t;
                        }
                    }
                }
                c_n.set(a, b, g, truncated(spec, acc));
            }
        }
    }

    // tangency residuals: ambient product minus its tangential part
    let mut residuals = Vec::new();
    let mut natural = true;
    for a in 0..n {
        for b in a..n {
            let mut components = Vec::with_capacity(m);
            for k in 0..m {
                let mut prod = PuiseuxPoly::zero(map.target_vars());
                for i in 0..m {
                    for jj in 0..m {
                        let base = &raised_sub[i][jj][k];
                        if base.is_zero() {
                            continue;
                        }
                        let t = &(&j[i][a] * &j[jj][b]) * base;
                        prod = &prod + &t;
                    }
                }
                let mut tang = PuiseuxPoly::zero(map.target_vars());
                for g in 0..n {
                    let mut cr = PuiseuxPoly::zero(map.target_vars());
                    for d in 0..n {
                        if eta_n.inv(g, d).is_zero() {
                            continue;
                        }
                        cr = &cr + &c_n.get(a, b, d).scale(eta_n.inv(g, d));
                    }
                    tang = &tang + &(&cr * &j[k][g]);
                }
                let r = truncated(spec, &prod - &tang);
                if !r.is_zero() {
                    natural = false;
                }
                components.push(r);
            }
            residuals.push(ResidualBlock { alpha: a, beta: b, components });
        }
    }

    // projected Euler field and its tangency
    let e_comps = spec.euler_components();
    let e_restricted: Vec<PuiseuxPoly> = e_comps
        .iter()
        .map(|e| map.restrict(e))
        .collect::<Result<_>>()?;
    let mut v_low = vec![PuiseuxPoly::zero(map.target_vars()); n];
    for b in 0..n {
        let mut acc = PuiseuxPoly::zero(map.target_vars());
        for i in 0..m {
            for jj in 0..m {
                if eta.get(i, jj).is_zero() {
                    continue;
                }
                let t = (&e_restricted[i] * &j[jj][b]).scale(eta.get(i, jj));
                acc = &acc + &t;
            }
        }
        v_low[b] = acc;
    }
    let euler_n: Vec<PuiseuxPoly> = (0..n)
        .map(|a| {
            let mut acc = PuiseuxPoly::zero(map.target_vars());
            for b in 0..n {
                if eta_n.inv(a, b).is_zero() {
                    continue;
                }
                acc = &acc + &v_low[b].scale(eta_n.inv(a, b));
            }
            acc
        })
        .collect();
    let mut euler_tangent = true;
    for i in 0..m {
        let mut back = PuiseuxPoly::zero(map.target_vars());
        for a in 0..n {
            back = &back + &(&euler_n[a] * &j[i][a]);
        }
        if !truncated(spec, &e_restricted[i] - &back).is_zero() {
            euler_tangent = false;
        }
    }

    if natural && euler_tangent {
        // with both hypotheses the projected Euler field is affine-linear
        for (a, e) in euler_n.iter().enumerate() {
            let linear = e.terms().all(|(mono, _)| {
                let mut deg = Rational::zero();
                for (i, ex) in mono.exponents().iter().enumerate() {
                    if e.vars().is_exponential(i) && !ex.is_zero() {
                        return false;
                    }
                    deg += ex;
                }
                deg <= 1 && mono.exponents().iter().all(|ex| !ex.is_negative())
            });
            if !linear {
                return Err(Error::Internal(format!(
                    "projected Euler component {} = {} is not affine-linear",
                    a + 1,
                    e
                )));
            }
        }
    }

    Ok(InducedStructure {
        eta_n,
        c_n,
        euler_n,
        residuals,
        natural,
        euler_tangent,
    })
}

/// Induced metric only; errors when it is not constant.
pub fn induced_metric(map: &SubmanifoldMap, spec: &FrobeniusSpec) -> Result<Metric> {
    Ok(induce(map, spec)?.eta_n)
}

/// Induced multiplication (lowered structure functions over tau).
pub fn induced_multiplication(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
) -> Result<StructureTensor> {
    Ok(induce(map, spec)?.c_n)
}

/// Tangency residual blocks; the submanifold is natural when all vanish.
pub fn tangency_residuals(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
) -> Result<Vec<ResidualBlock>> {
    Ok(induce(map, spec)?.residuals)
}

pub fn is_natural(map: &SubmanifoldMap, spec: &FrobeniusSpec) -> Result<bool> {
    Ok(induce(map, spec)?.natural)
}

/// Projected Euler field with its tangency flag.
pub fn induced_euler(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
) -> Result<(Vec<PuiseuxPoly>, bool)> {
    let ind = induce(map, spec)?;
    Ok((ind.euler_n, ind.euler_tangent))
}

/// How the codimension-one normal was normalized.
#[derive(Clone, Debug, Serialize)]
pub enum NormalScale {
    /// `<n, n> = epsilon` with `epsilon = +-1`.
    Unit { epsilon: i8 },
    /// Exact normalization impossible in the rationals; `Omega` refers to
    /// this unnormalized frame and `norm_squared` is its squared length.
    Unnormalized { norm_squared: PuiseuxPoly },
}

/// Second fundamental form data for a codimension-one submanifold.
#[derive(Clone, Debug)]
pub struct SecondFundamentalForm {
    /// Ambient components of the normal field.
    pub normal: Vec<PuiseuxPoly>,
    pub scale: NormalScale,
    /// `Omega[alpha][beta]` with `d^2 t / d tau^a d tau^b = Omega_ab * n`.
    pub omega: Vec<Vec<PuiseuxPoly>>,
}

/// Construct the normal by the cofactor construction, verify orthogonality,
/// normalization and that second derivatives are purely normal, and extract
/// the second fundamental form.
pub fn second_fundamental_form(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
) -> Result<SecondFundamentalForm> {
    let m = spec.dim();
    let n = map.n();
    if m != n + 1 {
        return Err(Error::UnsupportedCodimension(m - n));
    }
    let eta = metric_from_prepotential(spec)?;
    let j = map.jacobian(m)?;
    let tgt = map.target_vars();

    // covector w_k = +-det(J with row k removed); annihilates the tangents
    let mut w = Vec::with_capacity(m);
    for k in 0..m {
        let rows: Vec<&Vec<PuiseuxPoly>> = (0..m).filter(|&r| r != k).map(|r| &j[r]).collect();
        let d = poly_det(&rows, tgt);
        w.push(if k % 2 == 0 { d } else { -&d });
    }
    let mut normal: Vec<PuiseuxPoly> = (0..m)
        .map(|i| {
            let mut acc = PuiseuxPoly::zero(tgt);
            for k in 0..m {
                if eta.inv(i, k).is_zero() {
                    continue;
                }
                acc = &acc + &w[k].scale(eta.inv(i, k));
            }
            acc
        })
        .collect();
    for a in 0..n {
        let mut acc = PuiseuxPoly::zero(tgt);
        for i in 0..m {
            for k in 0..m {
                if eta.get(i, k).is_zero() {
                    continue;
                }
                acc = &acc + &(&j[i][a] * &normal[k]).scale(eta.get(i, k));
            }
        }
        if !acc.is_zero() {
            return Err(Error::Internal(format!(
                "normal not orthogonal to tangent {}: {}",
                a + 1,
                acc
            )));
        }
    }
    let mut norm_sq = PuiseuxPoly::zero(tgt);
    for i in 0..m {
        for k in 0..m {
            if eta.get(i, k).is_zero() {
                continue;
            }
            norm_sq = &norm_sq + &(&normal[i] * &normal[k]).scale(eta.get(i, k));
        }
    }
    if norm_sq.is_zero() {
        return Err(Error::NormalFrameNotRational("normal is null".into()));
    }
    let scale = match rational_sqrt_up_to_sign(&norm_sq) {
        Some((root, epsilon)) => {
            let inv = root.recip()?;
            for c in &mut normal {
                *c = c.scale(&inv);
            }
            NormalScale::Unit { epsilon }
        }
        None => NormalScale::Unnormalized { norm_squared: norm_sq.clone() },
    };

    // extract Omega from the purely-normal second derivatives; divide by
    // the first single-monomial normal component (exact in the Puiseux ring)
    let pivot = (0..m).find(|&i| normal[i].term_count() == 1).ok_or_else(|| {
        Error::NormalFrameNotRational("no monomial normal component to divide by".into())
    })?;
    let pivot_inv = normal[pivot].pow_rational(&Rational::from_int(-1))?;
    let mut omega = vec![vec![PuiseuxPoly::zero(tgt); n]; n];
    for a in 0..n {
        for b in a..n {
            let mut second: Vec<PuiseuxPoly> = Vec::with_capacity(m);
            for i in 0..m {
                second.push(
                    map.component(i)
                        .diff(map.coordinate_name(a))?
                        .diff(map.coordinate_name(b))?,
                );
            }
            let om = &second[pivot] * &pivot_inv;
            for i in 0..m {
                if !(&second[i] - &(&om * &normal[i])).is_zero() {
                    return Err(Error::Internal(format!(
                        "second derivative ({},{}) not purely normal",
                        a + 1,
                        b + 1
                    )));
                }
            }
            omega[a][b] = om.clone();
            omega[b][a] = om;
        }
    }

    Ok(SecondFundamentalForm { normal, scale, omega })
}

fn poly_det(rows: &[&Vec<PuiseuxPoly>], vars: &VarSet) -> PuiseuxPoly {
    let n = rows.len();
    if n == 0 {
        return PuiseuxPoly::one(vars);
    }
    let mut acc = PuiseuxPoly::zero(vars);
    // Laplace expansion along the first row; sizes here are at most 3x3
    for (c, entry) in rows[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let sub: Vec<Vec<PuiseuxPoly>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(cc, _)| *cc != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub_refs: Vec<&Vec<PuiseuxPoly>> = sub.iter().collect();
        let minor = poly_det(&sub_refs, vars);
        let term = entry * &minor;
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `sqrt` of a constant polynomial up to sign: returns `(r, epsilon)` with
/// `p = epsilon * r^2`, `epsilon = +-1`, when the root is rational.
fn rational_sqrt_up_to_sign(p: &PuiseuxPoly) -> Option<(Rational, i8)> {
    let c = p.as_constant()?;
    let eps = if c.is_negative() { -1 } else { 1 };
    let root = c.abs().nth_root_exact(2)?;
    Some((root, eps))
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussCodazziVerdict {
    pub gauss: bool,
    pub ricci: bool,
    pub codazzi: Option<bool>,
    pub first_failure: Option<String>,
}

impl GaussCodazziVerdict {
    pub fn all_pass(&self) -> bool {
        self.gauss && self.ricci && self.codazzi.unwrap_or(true)
    }
}

/// Integrability equations for a codimension-one second fundamental form:
/// the Gauss equation (2x2 minors of Omega vanish), the Ricci equation
/// (identically satisfied with a single normal; computed anyway), and the
/// Codazzi equation (curl of Omega vanishes). Codazzi is only decidable
/// against a constant-scale frame; otherwise it is `None`.
pub fn gauss_codazzi_check(
    sff: &SecondFundamentalForm,
    eta_n: &Metric,
    target: &VarSet,
) -> GaussCodazziVerdict {
    let n = eta_n.dim();
    let om = &sff.omega;
    let mut first_failure = None;
    let mut gauss = true;
    for a in 0..n {
        for b in 0..n {
            for g in 0..n {
                for d in 0..n {
                    let r = &(&om[a][b] * &om[g][d]) - &(&om[a][d] * &om[g][b]);
                    if !r.is_zero() {
                        gauss = false;
                        first_failure
                            .get_or_insert_with(|| format!("gauss ({a},{b},{g},{d}): {r}"));
                    }
                }
            }
        }
    }
    let mut ricci = true;
    for a in 0..n {
        for b in 0..n {
            let mut r = PuiseuxPoly::zero(target);
            for mu in 0..n {
                for nu in 0..n {
                    if eta_n.inv(mu, nu).is_zero() {
                        continue;
                    }
                    let t = (&(&om[mu][a] * &om[nu][b]) - &(&om[mu][b] * &om[nu][a]))
                        .scale(eta_n.inv(mu, nu));
                    r = &r + &t;
                }
            }
            if !r.is_zero() {
                ricci = false;
                first_failure.get_or_insert_with(|| format!("ricci ({a},{b}): {r}"));
            }
        }
    }
    let scale_constant = match &sff.scale {
        NormalScale::Unit { .. } => true,
        NormalScale::Unnormalized { norm_squared } => norm_squared.as_constant().is_some(),
    };
    let codazzi = if scale_constant {
        let mut ok = true;
        'outer: for a in 0..n {
            for mu in 0..n {
                for nu in 0..n {
                    let r = &om[a][mu]
                        .diff(target.info(nu).name.as_str())
                        .unwrap_or_else(|_| PuiseuxPoly::zero(target))
                        - &om[a][nu]
                            .diff(target.info(mu).name.as_str())
                            .unwrap_or_else(|_| PuiseuxPoly::zero(target));
                    if !r.is_zero() {
                        ok = false;
                        first_failure
                            .get_or_insert_with(|| format!("codazzi ({a},{mu},{nu}): {r}"));
                        break 'outer;
                    }
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    GaussCodazziVerdict { gauss, ricci, codazzi, first_failure }
}

/// Build the two-dimensional ruled surface over `b(tau2)` inside a
/// three-dimensional spec with antidiagonal metric, in flat coordinates,
/// and return it with its induced prepotential.
pub fn ruled_surface_2d(
    spec: &FrobeniusSpec,
    b: &PuiseuxPoly,
) -> Result<(SubmanifoldMap, PuiseuxPoly)> {
    if spec.dim() != 3 {
        return Err(Error::Input(
            "ruled surface construction needs dimension 3".into(),
        ));
    }
    let tgt = VarSet::ordinary(&["tau1", "tau2"]);
    if b.vars() != &tgt {
        return Err(Error::VariableMismatch(
            "profile must be over (tau1, tau2)".into(),
        ));
    }
    let tau1 = PuiseuxPoly::var(&tgt, "tau1")?;
    let tau2 = PuiseuxPoly::var(&tgt, "tau2")?;
    let bp = b.diff("tau2")?;
    let correction = (&bp * &bp).integrate("tau2")?.scale(&Rational::ratio(-1, 2));
    let t1 = &tau1 + &correction;
    let map = SubmanifoldMap::new(spec.vars().clone(), tgt, 2, vec![t1, b.clone(), tau2])?;
    let f_n = canonical_2d_prepotential(&map, spec)?;
    Ok((map, f_n))
}

/// Induced prepotential for a two-dimensional map in the canonical shape
/// (`t^1 = tau1 + f(tau2)`, `t^m = tau2`, induced metric `2 dtau1 dtau2`):
/// `F_N = tau1^2 tau2 / 2 + triple antiderivative of c^N_222`.
pub fn canonical_2d_prepotential(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
) -> Result<PuiseuxPoly> {
    if map.n() != 2 {
        return Err(Error::Input("canonical prepotential needs a surface".into()));
    }
    let ind = induce(map, spec)?;
    let off = Metric::new(vec![
        vec![Rational::zero(), Rational::one()],
        vec![Rational::one(), Rational::zero()],
    ])?;
    if ind.eta_n != off {
        return Err(Error::Input(format!(
            "induced metric is not the off-diagonal unit form: {:?}",
            ind.eta_n.entries()
        )));
    }
    if !ind.c_n.get(0, 0, 0).is_zero()
        || ind.c_n.get(0, 0, 1).as_constant() != Some(Rational::one())
        || !ind.c_n.get(0, 1, 1).is_zero()
    {
        return Err(Error::Internal(
            "induced multiplication does not match the canonical surface form".into(),
        ));
    }
    let tgt = map.target_vars().clone();
    let g = ind.c_n.get(1, 1, 1);
    let cubic = g.integrate("tau2")?.integrate("tau2")?.integrate("tau2")?;
    let head = crate::poly::parse_terms(&tgt, "1/2 tau1^2 tau2")?;
    Ok(&head + &cubic)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrepotentialVerdict {
    /// Integrability `d_beta c_{a mu nu} = d_alpha c_{b mu nu}`.
    pub closed: bool,
    /// `c_N = third derivatives of the candidate`, when one was supplied.
    pub candidate_matches: Option<bool>,
    /// `L_{E_N} c_N = d_F c_N`, checked when the Euler field is tangent.
    pub quasihomogeneous: Option<bool>,
}

impl PrepotentialVerdict {
    pub fn all_pass(&self) -> bool {
        self.closed
            && self.candidate_matches.unwrap_or(true)
            && self.quasihomogeneous.unwrap_or(true)
    }
}

/// Closedness of the induced structure functions, optional comparison with
/// a candidate prepotential, and quasihomogeneity with the ambient scaling
/// weight whenever the projected Euler field is tangent.
pub fn induced_prepotential_check(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
    candidate: Option<&PuiseuxPoly>,
) -> Result<PrepotentialVerdict> {
    let ind = induce(map, spec)?;
    let n = map.n();
    let mut closed = true;
    for a in 0..n {
        for b in (a + 1)..n {
            for mu in 0..n {
                for nu in mu..n {
                    let lhs = ind.c_n.get(a, mu, nu).diff(map.coordinate_name(b))?;
                    let rhs = ind.c_n.get(b, mu, nu).diff(map.coordinate_name(a))?;
                    if !truncated(spec, &lhs - &rhs).is_zero() {
                        closed = false;
                    }
                }
            }
        }
    }
    let candidate_matches = match candidate {
        None => None,
        Some(f) => {
            let mut ok = true;
            for a in 0..n {
                for b in a..n {
                    for g in b..n {
                        let d3 = f
                            .diff(map.coordinate_name(a))?
                            .diff(map.coordinate_name(b))?
                            .diff(map.coordinate_name(g))?;
                        if !truncated(spec, &d3 - ind.c_n.get(a, b, g)).is_zero() {
                            ok = false;
                        }
                    }
                }
            }
            Some(ok)
        }
    };
    let quasihomogeneous = if ind.euler_tangent {
        let d_f = euler_check(spec)?;
        let mut ok = true;
        let de: Vec<Vec<PuiseuxPoly>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|a| ind.euler_n[s].diff(map.coordinate_name(a)))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        for a in 0..n {
            for b in a..n {
                for g in b..n {
                    let mut lie = PuiseuxPoly::zero(map.target_vars());
                    for s in 0..n {
                        lie = &lie
                            + &(&ind.euler_n[s]
                                * &ind.c_n.get(a, b, g).diff(map.coordinate_name(s))?);
                        lie = &lie + &(&de[s][a] * ind.c_n.get(s, b, g));
                        lie = &lie + &(&de[s][b] * ind.c_n.get(a, s, g));
                        lie = &lie + &(&de[s][g] * ind.c_n.get(a, b, s));
                    }
                    let r = &lie - &ind.c_n.get(a, b, g).scale(&d_f);
                    if !truncated(spec, r).is_zero() {
                        ok = false;
                    }
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(PrepotentialVerdict { closed, candidate_matches, quasihomogeneous })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionVerdict {
    pub routes_agree: bool,
    pub derivative_identity: bool,
    pub g_n: Vec<Vec<PuiseuxPoly>>,
}

/// Induced intersection form computed two ways: restriction of the ambient
/// form, and intrinsically from the induced multiplication and Euler field.
/// Requires a natural map with tangent Euler field. Both routes use the
/// Euler field scaled so the unity direction has weight one.
pub fn induced_intersection_form(
    map: &SubmanifoldMap,
    spec: &FrobeniusSpec,
) -> Result<IntersectionVerdict> {
    let ind = induce(map, spec)?;
    if !ind.natural || !ind.euler_tangent {
        return Err(Error::Input(
            "intersection comparison needs a natural map with tangent Euler field".into(),
        ));
    }
    let m = spec.dim();
    let n = map.n();
    let eta = metric_from_prepotential(spec)?;
    let j = map.jacobian(m)?;
    let g_ambient = intersection_form(spec)?;
    let tgt = map.target_vars();

    // restriction route: A_i^a = eta_N^{ab} eta_ij J^j_b
    let mut a_proj = vec![vec![PuiseuxPoly::zero(tgt); n]; m];
    for (i, row) in a_proj.iter_mut().enumerate() {
        for (a, slot) in row.iter_mut().enumerate() {
            let mut acc = PuiseuxPoly::zero(tgt);
            for b in 0..n {
                for jj in 0..m {
                    let w = ind.eta_n.inv(a, b) * eta.get(i, jj);
                    if w.is_zero() {
                        continue;
                    }
                    acc = &acc + &j[jj][b].scale(&w);
                }
            }
            *slot = acc;
        }
    }
    let mut g_restricted = vec![vec![PuiseuxPoly::zero(tgt); n]; n];
    for a in 0..n {
        for b in a..n {
            let mut acc = PuiseuxPoly::zero(tgt);
            for i in 0..m {
                for jj in 0..m {
                    let gij = map.restrict(&g_ambient[i][jj])?;
                    if gij.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&gij * &(&a_proj[i][a] * &a_proj[jj][b]));
                }
            }
            let acc = truncated(spec, acc);
            g_restricted[a][b] = acc.clone();
            g_restricted[b][a] = acc;
        }
    }

    // intrinsic route, with the unity weight read off the projected field
    let d1 = {
        let d = ind.euler_n[0].diff(map.coordinate_name(0))?;
        d.as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Internal("projected Euler field has no unity weight".into()))?
    };
    let inv_d1 = d1.recip()?;
    let mut g_intrinsic = vec![vec![PuiseuxPoly::zero(tgt); n]; n];
    for a in 0..n {
        for b in a..n {
            let mut acc = PuiseuxPoly::zero(tgt);
            for p in 0..n {
                for q in 0..n {
                    let w = ind.eta_n.inv(a, p) * ind.eta_n.inv(b, q);
                    if w.is_zero() {
                        continue;
                    }
                    for r in 0..n {
                        acc = &acc + &(&ind.c_n.get(p, q, r).scale(&w) * &ind.euler_n[r]);
                    }
                }
            }
            let acc = truncated(spec, acc.scale(&inv_d1));
            g_intrinsic[a][b] = acc.clone();
            g_intrinsic[b][a] = acc;
        }
    }

    let mut routes_agree = true;
    let mut derivative_identity = true;
    for a in 0..n {
        for b in 0..n {
            if g_restricted[a][b] != g_intrinsic[a][b] {
                routes_agree = false;
            }
            let d = truncated(spec, g_intrinsic[a][b].diff(map.coordinate_name(0))?);
            if d.as_constant() != Some(ind.eta_n.inv(a, b).clone()) {
                derivative_identity = false;
            }
        }
    }
    Ok(IntersectionVerdict {
        routes_agree,
        derivative_identity,
        g_n: g_intrinsic,
    })
}

/// Coordinate-plane map keeping the ambient coordinates in `kept` (other
/// coordinates are pinned to zero). Exponential carriers of kept
/// coordinates follow along; carriers of dropped coordinates must not
/// occur in the spec.
pub fn coordinate_plane_map(spec: &FrobeniusSpec, kept: &[usize]) -> Result<SubmanifoldMap> {
    let m = spec.dim();
    let names: Vec<String> = kept
        .iter()
        .map(|&i| {
            if i >= m {
                return Err(Error::Input(format!("kept index {i} out of range")));
            }
            Ok(format!("tau{}", i + 1))
        })
        .collect::<Result<_>>()?;
    let mut target = VarSet::ordinary(&names);
    // mirror exponential carriers of kept coordinates
    for idx in m..spec.vars().len() {
        let info = spec.vars().info(idx);
        if let crate::poly::VarKind::Exponential { base } = &info.kind {
            let bi = spec.vars().index_of(base).expect("validated");
            match kept.iter().position(|&kk| kk == bi) {
                Some(pos) => {
                    target = target.with_exponential(&info.name, &names[pos])?;
                }
                None => {
                    return Err(Error::Input(format!(
                        "cannot drop coordinate `{base}` carrying an exponential sector"
                    )))
                }
            }
        }
    }
    let mut components = Vec::with_capacity(spec.vars().len());
    for i in 0..m {
        match kept.iter().position(|&kk| kk == i) {
            Some(pos) => components.push(PuiseuxPoly::var(&target, &names[pos])?),
            None => components.push(PuiseuxPoly::zero(&target)),
        }
    }
    for idx in m..spec.vars().len() {
        let name = spec.vars().info(idx).name.clone();
        components.push(PuiseuxPoly::var(&target, &name)?);
    }
    SubmanifoldMap::new(spec.vars().clone(), target, kept.len(), components)
}

/// Direct algebraic naturality conditions for a coordinate plane:
/// `c_{ij}^{~k}` restricted to the plane, for `i, j` kept and `k` dropped.
pub fn coordinate_plane_conditions(
    spec: &FrobeniusSpec,
    kept: &[usize],
) -> Result<Vec<PuiseuxPoly>> {
    let m = spec.dim();
    let map = coordinate_plane_map(spec, kept)?;
    let eta = metric_from_prepotential(spec)?;
    let c = structure_tensor(spec);
    let raised = raise_first_two(&c, &eta);
    let mut out = Vec::new();
    for &i in kept {
        for &jj in kept {
            if jj < i {
                continue;
            }
            for k in 0..m {
                if kept.contains(&k) {
                    continue;
                }
                out.push(truncated(spec, map.restrict(&raised[i][jj][k])?));
            }
        }
    }
    Ok(out)
}

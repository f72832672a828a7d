//! Sparse multivariate polynomials with rational exponents.
//!
//! [`PuiseuxPoly`] is the workhorse of the crate: a finite sum of monomials
//! whose exponents are exact rationals (possibly negative), over a fixed
//! ordered variable table. Terms are kept in a `BTreeMap` keyed by the
//! exponent vector, so the representation is canonical (lexicographic) and
//! equality is structural.
//!
//! A variable may be declared *exponential with base `t`*: it stands for
//! `e^t` and differentiation by `t` multiplies such a monomial by its
//! exponent instead of lowering it. This is how prepotentials with an
//! `e^{t}`-graded sector are handled without a transcendental engine; the
//! grade of a term is the total degree in the exponential variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// How a variable behaves under differentiation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    Ordinary,
    /// Stands for `e^base`; `d/d base` acts as multiplication by the exponent.
    Exponential { base: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarInfo {
    pub name: String,
    pub kind: VarKind,
}

/// Ordered variable table shared by all polynomials in a computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSet {
    vars: Vec<VarInfo>,
}

impl VarSet {
    pub fn ordinary<S: AsRef<str>>(names: &[S]) -> Self {
        VarSet {
            vars: names
                .iter()
                .map(|n| VarInfo {
                    name: n.as_ref().to_string(),
                    kind: VarKind::Ordinary,
                })
                .collect(),
        }
    }

    pub fn new(vars: Vec<VarInfo>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Input(format!("duplicate variable `{}`", v.name)));
            }
            if let VarKind::Exponential { base } = &v.kind {
                if !vars
                    .iter()
                    .any(|w| w.name == *base && w.kind == VarKind::Ordinary)
                {
                    return Err(Error::Input(format!(
                        "exponential variable `{}` has unknown base `{}`",
                        v.name, base
                    )));
                }
            }
        }
        Ok(VarSet { vars })
    }

    /// Append an exponential variable standing for `e^base`.
    pub fn with_exponential(mut self, name: &str, base: &str) -> Result<Self> {
        self.vars.push(VarInfo {
            name: name.to_string(),
            kind: VarKind::Exponential { base: base.to_string() },
        });
        VarSet::new(self.vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn info(&self, i: usize) -> &VarInfo {
        &self.vars[i]
    }

    pub fn is_exponential(&self, i: usize) -> bool {
        matches!(self.vars[i].kind, VarKind::Exponential { .. })
    }

    /// Number of leading ordinary variables (exponential carriers come last).
    pub fn ordinary_count(&self) -> usize {
        self.vars
            .iter()
            .filter(|v| v.kind == VarKind::Ordinary)
            .count()
    }

    /// Indices of exponential variables whose base is `name`.
    fn exponentials_with_base(&self, name: &str) -> Vec<usize> {
        self.vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match &v.kind {
                VarKind::Exponential { base } if base == name => Some(i),
                _ => None,
            })
            .collect()
    }
}

/// Exponent vector of a single term; rational, possibly negative entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: Vec<Rational>,
}

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial {
            exponents: vec![Rational::zero(); nvars],
        }
    }

    pub fn new(exponents: Vec<Rational>) -> Self {
        Monomial { exponents }
    }

    pub fn exponent(&self, i: usize) -> &Rational {
        &self.exponents[i]
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|e| e.is_zero())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Total degree: sum of all exponents.
    pub fn total_degree(&self) -> Rational {
        let mut d = Rational::zero();
        for e in &self.exponents {
            d += e;
        }
        d
    }
}

/// Sparse polynomial with rational exponents and [`Rational`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl PuiseuxPoly {
    pub fn zero(vars: &VarSet) -> Self {
        PuiseuxPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut p = PuiseuxPoly::zero(vars);
        p.add_term(Monomial::constant(vars.len()), c);
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        PuiseuxPoly::constant(vars, Rational::one())
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut exps = vec![Rational::zero(); vars.len()];
        exps[i] = Rational::one();
        let mut p = PuiseuxPoly::zero(vars);
        p.add_term(Monomial::new(exps), Rational::one());
        Ok(p)
    }

    /// Single term `c * prod v_i^{e_i}` given as `(name, exponent)` pairs.
    pub fn monomial(vars: &VarSet, c: Rational, powers: &[(&str, Rational)]) -> Result<Self> {
        let mut exps = vec![Rational::zero(); vars.len()];
        for (name, e) in powers {
            let i = vars
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable((*name).into()))?;
            exps[i] = &exps[i] + e;
        }
        let mut p = PuiseuxPoly::zero(vars);
        p.add_term(Monomial::new(exps), c);
        Ok(p)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_same_vars(&self, other: &PuiseuxPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!(
                "[{}] vs [{}]",
                self.vars.names().collect::<Vec<_>>().join(","),
                other.vars.names().collect::<Vec<_>>().join(","),
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PuiseuxPoly) -> Result<PuiseuxPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PuiseuxPoly) -> Result<PuiseuxPoly> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &PuiseuxPoly) -> Result<PuiseuxPoly> {
        self.check_same_vars(other)?;
        let mut out = PuiseuxPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> PuiseuxPoly {
        if c.is_zero() {
            return PuiseuxPoly::zero(&self.vars);
        }
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Non-negative integer power.
    pub fn pow_usize(&self, e: usize) -> PuiseuxPoly {
        let mut out = PuiseuxPoly::one(&self.vars);
        for _ in 0..e {
            out = out.checked_mul(self).expect("same vars");
        }
        out
    }

    /// Partial derivative. For an exponential variable `q = e^t`, `d/dt`
    /// contributes `exponent * term` without changing the monomial.
    pub fn diff(&self, var: &str) -> Result<PuiseuxPoly> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.into()))?;
        if self.vars.is_exponential(i) {
            return Err(Error::Input(format!(
                "cannot differentiate with respect to exponential variable `{var}`"
            )));
        }
        let exp_carriers = self.vars.exponentials_with_base(var);
        let mut out = PuiseuxPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if !e.is_zero() {
                let mut exps = m.exponents().to_vec();
                exps[i] = e - &Rational::one();
                out.add_term(Monomial::new(exps), c * e);
            }
            for &j in &exp_carriers {
                let g = m.exponent(j);
                if !g.is_zero() {
                    out.add_term(m.clone(), c * g);
                }
            }
        }
        Ok(out)
    }

    /// Antiderivative in `var`; errors on exponent -1 and on terms graded by
    /// an exponential carrier of `var`.
    pub fn integrate(&self, var: &str) -> Result<PuiseuxPoly> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.into()))?;
        let exp_carriers = self.vars.exponentials_with_base(var);
        let minus_one = Rational::from_int(-1);
        let mut out = PuiseuxPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if exp_carriers.iter().any(|&j| !m.exponent(j).is_zero()) {
                return Err(Error::Input(format!(
                    "cannot integrate exponential sector in `{var}`"
                )));
            }
            let e = m.exponent(i);
            if *e == minus_one {
                return Err(Error::LogarithmicCase(format!(
                    "term with {var}^-1 has no rational antiderivative"
                )));
            }
            let e1 = e + &Rational::one();
            let mut exps = m.exponents().to_vec();
            exps[i] = e1.clone();
            out.add_term(Monomial::new(exps), c / &e1);
        }
        Ok(out)
    }

    /// Compose: replace variables by polynomials over `target`. Unbound
    /// variables must exist in `target` under the same name and kind.
    ///
    /// A non-integer (or negative) exponent is only accepted when the bound
    /// image is a single monomial whose coefficient admits the exact
    /// rational power; anything else is rejected as a non-Puiseux
    /// composition.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, PuiseuxPoly>,
        target: &VarSet,
    ) -> Result<PuiseuxPoly> {
        for (name, image) in bindings {
            if self.vars.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
            if image.vars != *target {
                return Err(Error::VariableMismatch(format!(
                    "binding for `{name}` is over a different variable table"
                )));
            }
        }
        let images: Vec<PuiseuxPoly> = self
            .vars
            .vars
            .iter()
            .map(|v| match bindings.get(&v.name) {
                Some(img) => Ok(img.clone()),
                None => PuiseuxPoly::var(target, &v.name),
            })
            .collect::<Result<_>>()?;

        let mut out = PuiseuxPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = PuiseuxPoly::constant(target, c.clone());
            for (i, e) in m.exponents().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                term = term.checked_mul(&images[i].pow_rational(e)?)?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// `self^e` for rational `e`; general polynomials only for non-negative
    /// integer `e`, single monomials for anything else.
    pub fn pow_rational(&self, e: &Rational) -> Result<PuiseuxPoly> {
        if let Some(n) = e.to_i64() {
            if n >= 0 {
                return Ok(self.pow_usize(n as usize));
            }
        }
        // rational or negative power: monomial images only
        if self.terms.len() != 1 {
            return Err(Error::NonPuiseuxComposition(format!(
                "rational power {e} of a {}-term polynomial",
                self.terms.len()
            )));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let coeff = c.pow_rational(e).ok_or_else(|| {
            Error::NonPuiseuxComposition(format!("coefficient {c} has no exact power {e}"))
        })?;
        let exps = m.exponents().iter().map(|x| x * e).collect();
        let mut out = PuiseuxPoly::zero(&self.vars);
        out.add_term(Monomial::new(exps), coeff);
        Ok(out)
    }

    /// Evaluate at a rational point (all variables bound).
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let values: Vec<&Rational> = self
            .vars
            .vars
            .iter()
            .map(|v| {
                point
                    .get(&v.name)
                    .ok_or_else(|| Error::Input(format!("no value for `{}`", v.name)))
            })
            .collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.exponents().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let p = values[i].pow_rational(e).ok_or_else(|| {
                    Error::Input(format!(
                        "value {} has no exact power {} for `{}`",
                        values[i],
                        e,
                        self.vars.info(i).name
                    ))
                })?;
                t *= &p;
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Total degree in the exponential variables of a term.
    pub fn exp_degree(&self, m: &Monomial) -> Rational {
        let mut d = Rational::zero();
        for (i, e) in m.exponents().iter().enumerate() {
            if self.vars.is_exponential(i) {
                d += e;
            }
        }
        d
    }

    /// Drop every term of exponential degree above `order`.
    pub fn truncate_exp_degree(&self, order: u32) -> PuiseuxPoly {
        let bound = Rational::from_int(order as i64);
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.exp_degree(m) <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Component of exact exponential degree `order`.
    pub fn exp_degree_component(&self, order: u32) -> PuiseuxPoly {
        let want = Rational::from_int(order as i64);
        PuiseuxPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.exp_degree(m) == want)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Total degree in the ordinary variables only, `None` for 0.
    pub fn max_ordinary_degree(&self) -> Option<Rational> {
        self.terms
            .keys()
            .map(|m| {
                let mut d = Rational::zero();
                for (i, e) in m.exponents().iter().enumerate() {
                    if !self.vars.is_exponential(i) {
                        d += e;
                    }
                }
                d
            })
            .max()
    }

    /// True when every exponent is a non-negative integer and no
    /// exponential variable occurs.
    pub fn is_plain_polynomial(&self) -> bool {
        self.terms.keys().all(|m| {
            m.exponents().iter().enumerate().all(|(i, e)| {
                e.is_integer() && !e.is_negative() && (!self.vars.is_exponential(i) || e.is_zero())
            })
        })
    }

    /// Group terms by their exponents in `group_vars`; returns, per exponent
    /// pattern, the coefficient polynomial in the remaining variables.
    pub fn coefficients_grouped_by(&self, group_vars: &[&str]) -> Result<Vec<PuiseuxPoly>> {
        let idx: Vec<usize> = group_vars
            .iter()
            .map(|n| {
                self.vars
                    .index_of(n)
                    .ok_or_else(|| Error::UnknownVariable((*n).into()))
            })
            .collect::<Result<_>>()?;
        let mut groups: BTreeMap<Vec<Rational>, PuiseuxPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<Rational> = idx.iter().map(|&i| m.exponent(i).clone()).collect();
            let mut exps = m.exponents().to_vec();
            for &i in &idx {
                exps[i] = Rational::zero();
            }
            groups
                .entry(key)
                .or_insert_with(|| PuiseuxPoly::zero(&self.vars))
                .add_term(Monomial::new(exps), c.clone());
        }
        Ok(groups.into_values().collect())
    }

    /// Remove rational content and normalize the sign of the leading
    /// (lexicographically largest) coefficient to be positive. Zero maps to
    /// zero.
    pub fn primitive_part(&self) -> PuiseuxPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::from(1);
        let mut numer_gcd = BigInt::from(0);
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
            numer_gcd = numer_gcd.gcd(c.numer());
        }
        let scale = Rational::from_big(denom_lcm, numer_gcd).expect("nonzero gcd");
        let mut out = self.scale(&scale);
        let lead_negative = out
            .terms
            .iter()
            .next_back()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if lead_negative {
            out = out.scale(&Rational::from_int(-1));
        }
        out
    }

    /// `Some(lambda)` when `self == lambda * other` with `lambda != 0`.
    pub fn proportional_to(&self, other: &PuiseuxPoly) -> Option<Rational> {
        if self.vars != other.vars || self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let (m0, c0) = self.terms.iter().next().unwrap();
        let d0 = other.terms.get(m0)?;
        let lambda = c0 / d0;
        for (m, c) in &self.terms {
            let d = other.terms.get(m)?;
            if *c != d * &lambda {
                return None;
            }
        }
        Some(lambda)
    }

    /// Leading-term exact division attempt used for condition reduction:
    /// every exponent of `divisor_lead` must fit under `m` with integer,
    /// non-negative quotient exponents.
    fn monomial_quotient(m: &Monomial, d: &Monomial) -> Option<Monomial> {
        let exps: Vec<Rational> = m
            .exponents()
            .iter()
            .zip(d.exponents())
            .map(|(a, b)| a - b)
            .collect();
        if exps.iter().all(|e| e.is_integer() && !e.is_negative()) {
            Some(Monomial::new(exps))
        } else {
            None
        }
    }

    /// True when some divisor ordering reduces `self` to zero, which
    /// certifies membership in the ideal generated by `divisors` (the
    /// remainder of plain multivariate division is order-dependent, so a
    /// nonzero remainder in one order proves nothing; every order is tried).
    pub fn reduces_to_zero_modulo(&self, divisors: &[PuiseuxPoly]) -> bool {
        fn permutations(k: usize, order: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if order.len() == k {
                out.push(order.clone());
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    order.push(i);
                    permutations(k, order, used, out);
                    order.pop();
                    used[i] = false;
                }
            }
        }
        let mut orders = Vec::new();
        permutations(
            divisors.len(),
            &mut Vec::new(),
            &mut vec![false; divisors.len()],
            &mut orders,
        );
        orders.into_iter().any(|order| {
            let perm: Vec<PuiseuxPoly> = order.iter().map(|&i| divisors[i].clone()).collect();
            self.reduce_modulo(&perm).is_zero()
        })
    }

    /// Multivariate division remainder of `self` modulo `divisors`
    /// (plain-polynomial reduction; used to discard redundant naturality
    /// conditions, remainder 0 certifies ideal membership).
    pub fn reduce_modulo(&self, divisors: &[PuiseuxPoly]) -> PuiseuxPoly {
        let mut rem = PuiseuxPoly::zero(&self.vars);
        let mut work = self.clone();
        'outer: while let Some((m, c)) = work.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            for d in divisors {
                if let Some((dm, dc)) = d.terms.iter().next_back() {
                    if let Some(q) = Self::monomial_quotient(&m, dm) {
                        let factor = &c / dc;
                        let mut qpoly = PuiseuxPoly::zero(&self.vars);
                        qpoly.add_term(q, factor);
                        work = work
                            .checked_sub(&qpoly.checked_mul(d).expect("same vars"))
                            .expect("same vars");
                        continue 'outer;
                    }
                }
            }
            work.terms.remove(&m);
            rem.add_term(m, c);
        }
        rem
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<&str> = self.vars.names().collect();
        // largest monomial first reads like hand-written algebra
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in m.exponents().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    factors.push(names[i].to_string());
                } else if e.is_integer() && !e.is_negative() {
                    factors.push(format!("{}^{}", names[i], e));
                } else {
                    factors.push(format!("{}^({})", names[i], e));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.checked_add(rhs).expect("variable mismatch")
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.checked_sub(rhs).expect("variable mismatch")
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.checked_mul(rhs).expect("variable mismatch")
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        self.scale(&Rational::from_int(-1))
    }
}

// --- serialization: sorted term list, exact strings ---

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<Rational>,
    coefficient: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    variables: VarSet,
    terms: Vec<TermRepr>,
}

impl Serialize for PuiseuxPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            variables: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    exponents: m.exponents().to_vec(),
                    coefficient: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut p = PuiseuxPoly::zero(&repr.variables);
        for t in repr.terms {
            if t.exponents.len() != repr.variables.len() {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            p.add_term(Monomial::new(t.exponents), t.coefficient);
        }
        Ok(p)
    }
}

/// Parse a term list in the compact text form used by the embedded catalog:
/// `"1/2 t1^2 t3; 1/2 t1 t2^2; 1/6 t2^3 t3^2"`. Exponents may be rational
/// (`t2^3/2` is written `t2^(3/2)`).
pub fn parse_terms(vars: &VarSet, text: &str) -> Result<PuiseuxPoly> {
    let mut p = PuiseuxPoly::zero(vars);
    for raw in text.split(';') {
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let mut coeff = Rational::one();
        let mut exps = vec![Rational::zero(); vars.len()];
        for (k, piece) in raw.split_whitespace().enumerate() {
            if k == 0 && !piece.chars().next().map(char::is_alphabetic).unwrap_or(false) {
                coeff = Rational::parse(piece)?;
                continue;
            }
            let (name, e) = match piece.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    (n, Rational::parse(e)?)
                }
                None => (piece, Rational::one()),
            };
            let i = vars
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.into()))?;
            exps[i] = &exps[i] + &e;
        }
        let mut term = PuiseuxPoly::zero(vars);
        term.add_term(Monomial::new(exps), coeff);
        p = p.checked_add(&term)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarSet {
        VarSet::ordinary(&["x", "y"])
    }

    fn p(text: &str) -> PuiseuxPoly {
        parse_terms(&xy(), text).unwrap()
    }

    #[test]
    fn exponent_addition_on_monomials() {
        let v = VarSet::ordinary(&["tau2"]);
        let a = parse_terms(&v, "1 tau2^(3/2)").unwrap();
        let sq = a.checked_mul(&a).unwrap();
        assert_eq!(sq, parse_terms(&v, "1 tau2^3").unwrap());
    }

    #[test]
    fn cancellation_leaves_empty_term_set() {
        let a = p("1 x; 1");
        let d = a.checked_sub(&a).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.term_count(), 0);
    }

    #[test]
    fn mixed_arithmetic() {
        // (t1^2 t3 / 2)*2 + t1 t2^2 - t1 t2^2 = t1^2 t3
        let v = VarSet::ordinary(&["t1", "t2", "t3"]);
        let a = parse_terms(&v, "1/2 t1^2 t3").unwrap().scale(&Rational::from_int(2));
        let b = parse_terms(&v, "1 t1 t2^2").unwrap();
        let out = a.checked_add(&b).unwrap().checked_sub(&b).unwrap();
        assert_eq!(out, parse_terms(&v, "1 t1^2 t3").unwrap());
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = p("1 x");
        let b = parse_terms(&VarSet::ordinary(&["x"]), "1 x").unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn power_rule_with_rational_exponent() {
        let v = VarSet::ordinary(&["k", "tau2"]);
        let a = parse_terms(&v, "1 k tau2^(5/2)").unwrap();
        let d = a.diff("tau2").unwrap();
        assert_eq!(d, parse_terms(&v, "5/2 k tau2^(3/2)").unwrap());
    }

    #[test]
    fn third_derivative_of_degree_eleven_term() {
        let v = VarSet::ordinary(&["t3"]);
        let a = parse_terms(&v, "1/3960 t3^11").unwrap();
        let d3 = a.diff("t3").unwrap().diff("t3").unwrap().diff("t3").unwrap();
        assert_eq!(d3, parse_terms(&v, "1/4 t3^8").unwrap());
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let c = PuiseuxPoly::constant(&xy(), Rational::from_int(7));
        assert!(c.diff("x").unwrap().is_zero());
        assert!(matches!(c.diff("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution_examples() {
        let amb = VarSet::ordinary(&["t2", "t3"]);
        let tgt = VarSet::ordinary(&["k2", "tau2"]);
        let f = parse_terms(&amb, "1 t2^2 t3^5").unwrap();
        let mut b = BTreeMap::new();
        b.insert("t2".to_string(), parse_terms(&tgt, "1 k2 tau2^3").unwrap());
        b.insert("t3".to_string(), parse_terms(&tgt, "1 tau2").unwrap());
        let out = f.substitute(&b, &tgt).unwrap();
        assert_eq!(out, parse_terms(&tgt, "1 k2^2 tau2^11").unwrap());

        // monomial image under a non-integer power
        let f = parse_terms(&amb, "1 t2^(1/2)").unwrap();
        let mut b = BTreeMap::new();
        b.insert("t2".to_string(), parse_terms(&tgt, "4 tau2^2").unwrap());
        b.insert("t3".to_string(), PuiseuxPoly::one(&tgt));
        assert_eq!(
            f.substitute(&b, &tgt).unwrap(),
            parse_terms(&tgt, "2 tau2").unwrap()
        );

        // rational power of a sum is rejected
        let mut b = BTreeMap::new();
        b.insert("t2".to_string(), parse_terms(&tgt, "1 tau2; 1").unwrap());
        b.insert("t3".to_string(), PuiseuxPoly::one(&tgt));
        assert!(matches!(
            f.substitute(&b, &tgt),
            Err(Error::NonPuiseuxComposition(_))
        ));
    }

    #[test]
    fn exponential_variable_differentiation() {
        // q = e^x: d/dx (x q^3) = q^3 + 3 x q^3
        let v = VarSet::ordinary(&["x"]).with_exponential("q", "x").unwrap();
        let a = parse_terms(&v, "1 x q^3").unwrap();
        let d = a.diff("x").unwrap();
        assert_eq!(d, parse_terms(&v, "1 q^3; 3 x q^3").unwrap());
    }

    #[test]
    fn exp_degree_truncation() {
        let v = VarSet::ordinary(&["x"]).with_exponential("q", "x").unwrap();
        let a = parse_terms(&v, "1 q; 1 q^2; 1 q^3").unwrap();
        assert_eq!(a.truncate_exp_degree(2), parse_terms(&v, "1 q; 1 q^2").unwrap());
        assert_eq!(a.exp_degree_component(2), parse_terms(&v, "1 q^2").unwrap());
    }

    #[test]
    fn integration_and_logarithmic_error() {
        let v = VarSet::ordinary(&["y"]);
        let a = parse_terms(&v, "1 y^4").unwrap();
        assert_eq!(a.integrate("y").unwrap(), parse_terms(&v, "1/5 y^5").unwrap());
        let b = parse_terms(&v, "1 y^-1").unwrap();
        assert!(matches!(b.integrate("y"), Err(Error::LogarithmicCase(_))));
    }

    #[test]
    fn primitive_and_proportional() {
        let a = p("27 x^3; -22 x^2; -5 x");
        let b = p("-27/8 x^3; 11/4 x^2; 5/8 x");
        let lambda = a.proportional_to(&b).unwrap();
        assert_eq!(lambda, Rational::from_int(-8));
        assert_eq!(b.primitive_part(), a);
    }

    #[test]
    fn reduce_modulo_divides_out_multiples() {
        let cond = p("1 x^2; -1 x");
        let multiple = cond.checked_mul(&p("3 x y")).unwrap();
        assert!(multiple.reduce_modulo(std::slice::from_ref(&cond)).is_zero());
        let independent = p("1 y^3; 1");
        assert!(!independent.reduce_modulo(&[cond]).is_zero());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let v = VarSet::ordinary(&["t2", "t3"]);
        let a = parse_terms(&v, "-5/27 t2^(3/2) t3^-1; 1/3960 t3^11").unwrap();
        let js = serde_json::to_string(&a).unwrap();
        let back: PuiseuxPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }

    #[test]
    fn display_reads_naturally() {
        let a = p("1 x^2; -1/2 y; 3");
        assert_eq!(a.to_string(), "x^2 - 1/2*y + 3");
    }
}

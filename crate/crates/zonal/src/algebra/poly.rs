//! Sparse multivariate Laurent polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::point::EvalPoint;
use super::rational::{rational_pow, Rational};

/// Sparse polynomial: term map Monomial -> coefficient, plus an ordered
/// variable list. No zero coefficients are ever stored; terms iterate in
/// ascending graded-lex order, so everything downstream (serialization,
/// evaluation) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

/// Variable lists used throughout the crate.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable x_idx.
    pub fn var(vars: Vec<String>, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(idx), Rational::one());
        p
    }

    /// Single term c * x^exps.
    pub fn monomial(vars: Vec<String>, exps: Vec<i64>, c: Rational) -> Self {
        assert!(exps.len() <= vars.len());
        let mut p = Self::zero(vars);
        p.add_term(Monomial::new(exps), c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff_of(&self, exps: &[i64]) -> Rational {
        self.coeff(&Monomial::new(exps.to_vec()))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.width() <= self.vars.len(), "monomial exceeds variables");
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Largest term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// True if every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    fn assert_same_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic across different variable lists"
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product with every resulting term whose summed exponent over
    /// `weight_vars` exceeds `max_weight` dropped. Used for truncated
    /// power-series work.
    pub fn mul_truncate(&self, other: &Self, weight_vars: &[usize], max_weight: i64) -> Self {
        self.assert_same_vars(other);
        let weight = |m: &Monomial| -> i64 { weight_vars.iter().map(|&i| m.exponent(i)).sum() };
        let mut out = Self::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            let wa = weight(ma);
            for (mb, cb) in &other.terms {
                if wa + weight(mb) > max_weight {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// x_i ∂/∂x_i (Euler derivative): multiplies each term by its exponent.
    pub fn euler_derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e != 0 {
                out.add_term(m.clone(), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// ∂/∂x_i; exponents may go negative (Laurent).
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e != 0 {
                let mut exps = m.padded(self.vars.len().max(idx + 1));
                exps[idx] -= 1;
                out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.swap(i, j), c.clone());
        }
        out
    }

    /// Relabel the first `perm.len()` variables: slot `perm[i]` receives
    /// exponents of slot `i`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.permute(perm), c.clone());
        }
        out
    }

    /// Invariance under all permutations of the first `k` variables
    /// (adjacent transpositions generate the symmetric group).
    pub fn is_symmetric_in(&self, k: usize) -> bool {
        for i in 0..k.saturating_sub(1) {
            if self.swap_vars(i, i + 1) != *self {
                return false;
            }
        }
        true
    }

    /// Split f = x^shift * g with g an ordinary polynomial whose minimum
    /// exponent in every variable is zero. For f = 0 the shift is empty.
    pub fn laurent_split(&self) -> (Monomial, MultiPoly) {
        if self.is_zero() {
            return (Monomial::unit(), self.clone());
        }
        let n = self.vars.len();
        let mut mins = vec![i64::MAX; n];
        for m in self.terms.keys() {
            for (i, min) in mins.iter_mut().enumerate() {
                *min = (*min).min(m.exponent(i));
            }
        }
        let shift = Monomial::new(mins.clone());
        let mut g = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            g.add_term(m.div(&shift), c.clone());
        }
        (shift, g)
    }

    /// Multiply by a single monomial (Laurent allowed).
    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), cc * c);
        }
        out
    }

    /// Exact division: returns q with q * den == self. Division happens in
    /// the smallest ring containing both operands: two ordinary polynomials
    /// must have an ordinary polynomial quotient (so x1 / x2 fails), while
    /// genuinely Laurent operands divide in the Laurent ring, where every
    /// monomial is a unit. Fails with `NotDivisible` otherwise.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        self.assert_same_vars(den);
        if den.is_zero() {
            return Err(Error::InvalidParameter(
                "division by the zero polynomial".into(),
            ));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        // Peel off monomial content; divisibility is decided on the
        // monomial-free polynomial parts.
        let (num_shift, num_part) = self.laurent_split();
        let (den_shift, den_part) = den.laurent_split();
        let unit_shift = num_shift.div(&den_shift);
        if self.is_polynomial() && den.is_polynomial() && !unit_shift.is_polynomial() {
            return Err(Error::NotDivisible {
                context: "denominator monomial content does not divide the numerator".into(),
            });
        }

        let (den_lead_m, den_lead_c) = den_part.leading().expect("nonzero");
        let den_lead_m = den_lead_m.clone();
        let den_lead_c = den_lead_c.clone();

        let mut rem = num_part;
        let mut quot = Self::zero(self.vars.clone());
        while !rem.is_zero() {
            let (lead_m, lead_c) = rem.leading().expect("nonzero");
            let qm = lead_m.div(&den_lead_m);
            if !qm.is_polynomial() {
                return Err(Error::NotDivisible {
                    context: format!("leading term {lead_m:?} not divisible by {den_lead_m:?}"),
                });
            }
            let qc = lead_c / &den_lead_c;
            quot.add_term(qm.clone(), qc.clone());
            let neg = -qc;
            rem = &rem + &den_part.mul_monomial(&qm, &neg);
        }
        Ok(quot.mul_monomial(&unit_shift, &Rational::one()))
    }

    /// Substitute polynomials for every variable: self(args[0], ..).
    /// All args must share a variable list, which becomes the result's.
    /// Requires nonnegative exponents.
    pub fn compose(&self, args: &[Self]) -> Result<Self> {
        if args.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: args.len(),
            });
        }
        let out_vars = args
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = Self::zero(out_vars.clone());
        for (m, c) in &self.terms {
            if !m.is_polynomial() {
                return Err(Error::InvalidParameter(
                    "compose requires nonnegative exponents".into(),
                ));
            }
            let mut term = Self::constant(out_vars.clone(), c.clone());
            for (i, arg) in args.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    term = &term * &arg.pow(e as u32);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitute a rational value for one variable. The slot stays in the
    /// variable list with exponent zero everywhere.
    pub fn substitute_value(&self, idx: usize, value: &Rational) -> Result<Self> {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            let mut exps = m.padded(self.vars.len().max(idx + 1));
            exps[idx] = 0;
            out.add_term(Monomial::new(exps), c * rational_pow(value, e)?);
        }
        Ok(out)
    }

    /// Drop a variable slot; every exponent there must already be zero.
    pub fn remove_var(&self, idx: usize) -> Result<Self> {
        let mut vars = self.vars.clone();
        if idx >= vars.len() {
            return Err(Error::DimensionMismatch {
                expected: vars.len(),
                got: idx,
            });
        }
        vars.remove(idx);
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            if m.exponent(idx) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "cannot remove live variable {}",
                    self.vars[idx]
                )));
            }
            let mut exps = m.padded(self.vars.len());
            exps.remove(idx);
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Reinterpret over a wider variable list; existing slots keep their
    /// positions (new variables are appended after).
    pub fn extend_vars(&self, vars: Vec<String>) -> Self {
        assert!(vars.len() >= self.vars.len());
        assert_eq!(&vars[..self.vars.len()], self.vars.as_slice());
        MultiPoly {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Group terms by their exponents on `idxs`; each group keeps the full
    /// variable list with those exponents zeroed.
    pub fn partition_by(&self, idxs: &[usize]) -> BTreeMap<Vec<i64>, MultiPoly> {
        let mut out: BTreeMap<Vec<i64>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<i64> = idxs.iter().map(|&i| m.exponent(i)).collect();
            let mut exps = m.padded(self.vars.len());
            for &i in idxs {
                exps[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Self::zero(self.vars.clone()))
                .add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Exact evaluation at rational coordinates.
    pub fn eval_rational(&self, coords: &[Rational]) -> Result<Rational> {
        if coords.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: coords.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, x) in coords.iter().enumerate() {
                let e = m.exponent(i);
                if e != 0 {
                    if x.is_zero() && e < 0 {
                        return Err(Error::ZeroCoordinate { index: i });
                    }
                    term *= rational_pow(x, e)?;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Sum of all coefficients = exact value at the all-ones point.
    pub fn eval_all_ones(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Floating evaluation at complex coordinates, in the fixed term order.
    pub fn eval_complex(&self, coords: &[Complex64]) -> Result<Complex64> {
        if coords.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: coords.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(rational_to_f64(c), 0.0);
            for (i, x) in coords.iter().enumerate() {
                let e = m.exponent(i);
                if e != 0 {
                    if x.norm() == 0.0 && e < 0 {
                        return Err(Error::ZeroCoordinate { index: i });
                    }
                    term *= x.powi(e as i32);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Evaluate at an [`EvalPoint`].
    pub fn eval_point(&self, pt: &EvalPoint) -> Result<Complex64> {
        self.eval_complex(pt.coords())
    }
}

/// Nearest f64 to an exact rational (numerator/denominator division in
/// f64 after reducing through BigInt -> f64; adequate for the magnitudes
/// used here).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for extreme magnitudes.
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * f64::INFINITY
    })
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: Self) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: Self) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: Self) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Display descending so the leading term comes first.
        for (m, c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in 0..self.vars.len() {
                let e = m.exponent(i);
                if e == 1 {
                    write!(f, "*{}", self.vars[i])?;
                } else if e != 0 {
                    write!(f, "*{}^{}", self.vars[i], e)?;
                }
            }
        }
        Ok(())
    }
}

//! Rewriting symmetric polynomials in the elementary-symmetric basis
//! (Gauss's algorithm).

use num_traits::One;

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::poly::{var_names, MultiPoly};
use super::rational::Rational;

/// Elementary symmetric polynomial e_k of the first `block` variables,
/// expressed over the full variable list `vars`.
pub fn elementary_symmetric(vars: Vec<String>, block: usize, k: usize) -> MultiPoly {
    assert!(k <= block && block <= vars.len());
    let mut out = MultiPoly::zero(vars.clone());
    if k == 0 {
        return MultiPoly::one(vars);
    }
    // Iterate k-subsets of 0..block in lexicographic order.
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut exps = vec![0i64; vars.len()];
        for &i in &subset {
            exps[i] = 1;
        }
        out.add_term(Monomial::new(exps), Rational::one());
        // next subset
        let mut i = k;
        while i > 0 {
            i -= 1;
            if subset[i] < block - (k - i) {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Rewrite a polynomial symmetric in its first `n_sym` variables in terms
/// of the elementary symmetric polynomials z1..z_{n_sym}; any remaining
/// variables pass through unchanged. With `unimodular` set, z_{n_sym} is
/// set to 1 and dropped (the torus constraint x1...x_{n_sym} = 1).
///
/// The output variable list is [z1, .., z_k] ++ original passthrough vars,
/// with k = n_sym - 1 when `unimodular`, else n_sym.
pub fn to_elementary_basis(p: &MultiPoly, n_sym: usize, unimodular: bool) -> Result<MultiPoly> {
    let nv = p.nvars();
    assert!(n_sym <= nv && n_sym >= 1);
    for (m, _) in p.terms() {
        for i in 0..n_sym {
            if m.exponent(i) < 0 {
                return Err(Error::InvalidParameter(
                    "elementary-basis rewrite requires nonnegative exponents in the symmetric block"
                        .into(),
                ));
            }
        }
    }
    if !p.is_symmetric_in(n_sym) {
        return Err(Error::NotSymmetric {
            context: format!("not invariant under permutations of the first {n_sym} variables"),
        });
    }

    let full = to_elementary_full_vars(p, n_sym)?;
    if unimodular {
        let reduced = full.substitute_value(n_sym - 1, &Rational::one())?;
        reduced.remove_var(n_sym - 1)
    } else {
        Ok(full)
    }
}

/// `to_elementary_basis` with all n_sym z-variables kept (no torus
/// reduction).
pub fn to_elementary_basis_full(p: &MultiPoly, n_sym: usize) -> Result<MultiPoly> {
    to_elementary_basis(p, n_sym, false)
}

fn to_elementary_full_vars(p: &MultiPoly, n_sym: usize) -> Result<MultiPoly> {
    let nv = p.nvars();
    let mut out_vars = var_names("z", n_sym);
    out_vars.extend_from_slice(&p.vars()[n_sym..]);
    let mut out = MultiPoly::zero(out_vars.clone());

    // Gauss's algorithm runs per passthrough-monomial group; each group is
    // itself symmetric in the block.
    let passthrough: Vec<usize> = (n_sym..nv).collect();
    for (pass_exps, group) in p.partition_by(&passthrough) {
        let mut g = group;
        if !g.is_symmetric_in(n_sym) {
            return Err(Error::NotSymmetric {
                context: "a passthrough-coefficient group is not symmetric".into(),
            });
        }
        let mut rewritten = MultiPoly::zero(out_vars.clone());
        while !g.is_zero() {
            let (lead_m, lead_c) = g.leading().expect("nonzero");
            let a = lead_m.padded(n_sym);
            let c = lead_c.clone();
            debug_assert!(
                a.windows(2).all(|w| w[0] >= w[1]),
                "leading exponent of a symmetric polynomial must be sorted"
            );
            // z1^(a1-a2) z2^(a2-a3) ... z_n^(a_n)
            let mut zexps = vec![0i64; out_vars.len()];
            let mut eprod = MultiPoly::one(p.vars().to_vec());
            for i in 0..n_sym {
                let next = if i + 1 < n_sym { a[i + 1] } else { 0 };
                let e = a[i] - next;
                zexps[i] = e;
                if e > 0 {
                    let ek = elementary_symmetric(p.vars().to_vec(), n_sym, i + 1);
                    eprod = &eprod * &ek.pow(e as u32);
                }
            }
            rewritten.add_term(Monomial::new(zexps), c.clone());
            g = &g - &eprod.scale(&c);
        }
        // Reattach the passthrough monomial in the output variable order.
        let mut shift = vec![0i64; out_vars.len()];
        for (j, &e) in pass_exps.iter().enumerate() {
            shift[n_sym + j] = e;
        }
        out = &out + &rewritten.mul_monomial(&Monomial::new(shift), &Rational::one());
    }
    Ok(out)
}

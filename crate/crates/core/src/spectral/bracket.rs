//! Matrix commutators against Poisson brackets of the torus constraint.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, to_f64};
use crate::linalg::{c, CMatrix, I};
use crate::rep::Representation;
use crate::surface::{constraint_polynomial, poisson_bracket, CommPolynomial3, UPoly};

/// Largest `deg f + deg g` accepted by [`commutator_vs_bracket`].
pub const MAX_PAIR_DEGREE: u32 = 4;

/// Distinct orderings of a multiset of letters, starting from sorted order.
fn multiset_permutations(mut letters: Vec<usize>) -> Vec<Vec<usize>> {
    letters.sort_unstable();
    let mut out = vec![letters.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (1..letters.len())
            .rev()
            .find(|&i| letters[i - 1] < letters[i])
        else {
            return out;
        };
        let j = (i..letters.len())
            .rev()
            .find(|&j| letters[j] > letters[i - 1])
            .unwrap();
        letters.swap(i - 1, j);
        letters[i..].reverse();
        out.push(letters.clone());
    }
}

/// Averages the products over all orderings of `x^a y^b z^c`.
pub fn symmetrized_monomial(exps: [u32; 3], mats: &[CMatrix; 3]) -> CMatrix {
    let n = mats[0].nrows();
    let letters: Vec<usize> = (0..3)
        .flat_map(|k| std::iter::repeat(k).take(exps[k] as usize))
        .collect();
    let perms = multiset_permutations(letters);
    let mut acc = CMatrix::zeros(n, n);
    for p in &perms {
        let mut m = CMatrix::identity(n, n);
        for &k in p {
            m = &m * &mats[k];
        }
        acc += m;
    }
    acc / c(perms.len() as f64)
}

/// Fully symmetrized substitution `x → X, y → Y, z → Z`.
pub fn symmetrize(f: &CommPolynomial3, mats: &[CMatrix; 3]) -> CMatrix {
    let n = mats[0].nrows();
    let mut out = CMatrix::zeros(n, n);
    for (e, q) in f.terms() {
        out += symmetrized_monomial(*e, mats) * c(to_f64(q));
    }
    out
}

/// The halved torus constraint `½(x² − μ + y²)² + ½z² − 1`, whose brackets
/// `{x, y} = z` match `[X, Y] = iħZ`.
pub fn torus_bracket_constraint(mu: f64) -> Result<CommPolynomial3> {
    let mu_q = num_rational::BigRational::from_float(mu)
        .ok_or_else(|| Error::invalid("mu", "must be finite"))?;
    let p = UPoly::new(vec![-mu_q, int(0), int(1)]);
    Ok(constraint_polynomial(&p, &int(1), true))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BracketError {
    pub n: usize,
    pub error: f64,
}

/// `‖[F, G]/(iħ) − Sym({f, g})‖_F / ‖Sym({f, g})‖_F` per representation,
/// with denominator 1 when the bracket vanishes.
pub fn commutator_vs_bracket(
    f: &CommPolynomial3,
    g: &CommPolynomial3,
    reps: &[Representation],
) -> Result<Vec<BracketError>> {
    let deg = f.total_degree() + g.total_degree();
    if deg > MAX_PAIR_DEGREE {
        return Err(Error::DegreeTooHigh(deg));
    }
    reps.iter()
        .map(|rep| {
            let cons = torus_bracket_constraint(rep.mu)?;
            let br = poisson_bracket(f, g, &cons);
            let mats = [rep.x(), rep.y(), rep.z()];
            let (fm, gm) = (symmetrize(f, &mats), symmetrize(g, &mats));
            let lhs = (&fm * &gm - &gm * &fm) / (I * rep.hbar());
            let rhs = symmetrize(&br, &mats);
            let denom = if br.is_zero() { 1.0 } else { rhs.norm() };
            Ok(BracketError {
                n: rep.dim(),
                error: (lhs - rhs).norm() / denom,
            })
        })
        .collect()
}

//! Partial derivatives of trace invariants with respect to matrix entries.
//!
//! For a word `W = A X_k B` the derivative of `tr(W)` along `x^k_ij` is
//! `(B A)_ji`; for `W = A X_k^-1 B` it is `-(X_k^-1 B A X_k^-1)_ji`. Summing
//! over occurrences of `X_k` gives the full gradient. Powers are expanded
//! into repeated single letters first.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{Constraint, DenseMatrix, Matrix3, MatrixTuple, Scalar};
use crate::error::{Error, Result};
use crate::invariants::{eval_trace, TraceInvariant};

/// The coordinate `x^k_ij`: entry `(i, j)` of `X_k`, all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableIndex {
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

impl VariableIndex {
    pub const fn new(k: usize, i: usize, j: usize) -> Self {
        Self { k, i, j }
    }

    /// The entry solved for when restricting to `det X_k = 1`.
    pub fn is_solved_entry(&self) -> bool {
        self.i == 3 && self.j == 1
    }

    fn check<S: Scalar>(&self, tuple: &MatrixTuple<S>) -> Result<()> {
        if !(1..=3).contains(&self.i) || !(1..=3).contains(&self.j) || self.k == 0 {
            return Err(Error::InvalidVariable {
                k: self.k,
                row: self.i,
                col: self.j,
            });
        }
        tuple.matrix(self.k).map(|_| ())
    }
}

impl fmt::Display for VariableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}{}", self.k, self.i, self.j)
    }
}

/// Gradient of `tr(W)` with respect to `X_k`: entry `(i, j)` (0-based) is
/// `∂ tr(W) / ∂ x^k_{i+1,j+1}`.
pub fn trace_gradient<S: Scalar>(
    inv: &TraceInvariant,
    k: usize,
    tuple: &MatrixTuple<S>,
) -> Result<Matrix3<S>> {
    tuple.matrix(k)?;
    let word = inv.word();
    if word.max_generator() > tuple.rank() {
        return Err(Error::RankMismatch {
            index: word.max_generator(),
            rank: tuple.rank(),
        });
    }
    if !word.mentions(k) {
        return Ok(Matrix3::zero());
    }

    let letters: Vec<(usize, i8)> = word.expanded().collect();
    let mut inverses: HashMap<usize, Matrix3<S>> = HashMap::new();
    for &(g, s) in &letters {
        if s < 0 && !inverses.contains_key(&g) {
            inverses.insert(g, tuple.inverse_of(g)?);
        }
    }
    let factor = |&(g, s): &(usize, i8)| -> Matrix3<S> {
        if s > 0 {
            tuple.matrices()[g - 1].clone()
        } else {
            inverses[&g].clone()
        }
    };
    let factors: Vec<Matrix3<S>> = letters.iter().map(factor).collect();

    let n = factors.len();
    // prefix[p] = F_0 ... F_{p-1}, suffix[p] = F_p ... F_{n-1}
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(Matrix3::identity());
    for f in &factors {
        let next = prefix.last().unwrap() * f;
        prefix.push(next);
    }
    let mut suffix = vec![Matrix3::identity(); n + 1];
    for p in (0..n).rev() {
        suffix[p] = &factors[p] * &suffix[p + 1];
    }

    let mut grad = Matrix3::zero();
    for (p, &(g, s)) in letters.iter().enumerate() {
        if g != k {
            continue;
        }
        let ba = &suffix[p + 1] * &prefix[p];
        let term = if s > 0 {
            ba
        } else {
            let x_inv = &inverses[&k];
            -&(&(x_inv * &ba) * x_inv)
        };
        grad = &grad + &term.transpose();
    }
    Ok(grad)
}

/// `∂ tr(W) / ∂ x^k_ij` in the ambient coordinates of `gl(3)^r`.
pub fn d_trace<S: Scalar>(
    inv: &TraceInvariant,
    var: VariableIndex,
    tuple: &MatrixTuple<S>,
) -> Result<S> {
    var.check(tuple)?;
    Ok(trace_gradient(inv, var.k, tuple)?[(var.i - 1, var.j - 1)].clone())
}

/// Central difference `(f(x + h) - f(x - h)) / 2h` along one ambient
/// coordinate. The perturbed tuples are not unimodular.
pub fn fd_trace(
    inv: &TraceInvariant,
    var: VariableIndex,
    tuple: &MatrixTuple<Complex64>,
    step: f64,
) -> Result<Complex64> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::InvalidStep);
    }
    var.check(tuple)?;
    let shifted = |delta: f64| -> Result<Complex64> {
        let mut m = tuple.matrix(var.k)?.clone();
        m[(var.i - 1, var.j - 1)] += delta;
        let t = tuple
            .with_matrix(var.k, m)?
            .with_constraint(Constraint::GeneralLinear)?;
        eval_trace(inv, &t)
    };
    Ok((shifted(step)? - shifted(-step)?) / (2.0 * step))
}

/// Functions × variables matrix of partial derivatives at one tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianMatrix<S> {
    pub rows: Vec<TraceInvariant>,
    pub cols: Vec<VariableIndex>,
    pub entries: DenseMatrix<S>,
}

impl<S: Scalar> JacobianMatrix<S> {
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn determinant(&self) -> S {
        self.entries.determinant()
    }

    pub fn rank(&self) -> usize {
        self.entries.rank()
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        self.entries.get(row, col)
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix<S> {
        self.entries.submatrix(rows, cols)
    }
}

fn assemble<S: Scalar>(
    funcs: &[TraceInvariant],
    vars: &[VariableIndex],
    tuple: &MatrixTuple<S>,
    entry: impl Fn(&Matrix3<S>, &VariableIndex) -> Result<S>,
) -> Result<JacobianMatrix<S>> {
    for v in vars {
        v.check(tuple)?;
    }
    let mut entries = DenseMatrix::zeros(funcs.len(), vars.len());
    for (a, f) in funcs.iter().enumerate() {
        let mut grads: HashMap<usize, Matrix3<S>> = HashMap::new();
        for (b, v) in vars.iter().enumerate() {
            let g = match grads.entry(v.k) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(trace_gradient(f, v.k, tuple)?),
            };
            entries.set(a, b, entry(g, v)?);
        }
    }
    Ok(JacobianMatrix {
        rows: funcs.to_vec(),
        cols: vars.to_vec(),
        entries,
    })
}

/// Ambient Jacobian `(∂ f_a / ∂ x_b)` with every matrix entry treated as an
/// independent coordinate.
pub fn jacobian<S: Scalar>(
    funcs: &[TraceInvariant],
    vars: &[VariableIndex],
    tuple: &MatrixTuple<S>,
) -> Result<JacobianMatrix<S>> {
    assemble(funcs, vars, tuple, |g, v| Ok(g[(v.i - 1, v.j - 1)].clone()))
}

/// Jacobian of the functions restricted to the locus `det X_k = 1`, in the
/// local coordinates obtained by solving that equation for `x^k_31`.
///
/// By the chain rule the derivative along `x^k_ij` picks up
/// `-(∂f/∂x^k_31) C_ij / C_31`, where `C` is the cofactor matrix of `X_k`.
/// Variables may not include the solved entries themselves.
pub fn jacobian_on_constraint<S: Scalar>(
    funcs: &[TraceInvariant],
    vars: &[VariableIndex],
    tuple: &MatrixTuple<S>,
) -> Result<JacobianMatrix<S>> {
    let mut cofactors: HashMap<usize, Matrix3<S>> = HashMap::new();
    for v in vars {
        v.check(tuple)?;
        if v.is_solved_entry() {
            return Err(Error::InvalidVariable {
                k: v.k,
                row: v.i,
                col: v.j,
            });
        }
        if cofactors.contains_key(&v.k) {
            continue;
        }
        let x = tuple.matrix(v.k)?;
        let c = x.cofactor_matrix();
        let scale = x.max_magnitude().powi(2).max(f64::MIN_POSITIVE);
        if c[(2, 0)].is_negligible(1e-12, scale) {
            return Err(Error::DegenerateConstraint(v.k));
        }
        cofactors.insert(v.k, c);
    }
    assemble(funcs, vars, tuple, |g, v| {
        let c = &cofactors[&v.k];
        let (i, j) = (v.i - 1, v.j - 1);
        Ok(g[(i, j)].clone() - g[(2, 0)].clone() * c[(i, j)].clone() / c[(2, 0)].clone())
    })
}

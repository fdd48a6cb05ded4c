//! Monic three-term recurrence `λ P_n = P_{n+1} + b_n P_n + u_n P_{n-1}`.
//!
//! Coefficients come from two routes that must agree exactly: the piecewise
//! closed forms for `b_n`, `u_n`, and the composition `b_n = A_n + C_n - a²`,
//! `u_n = A_{n-1} C_n` from the truncated Wilson coefficients.

use std::fmt;
use std::ops::{Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::{ParamSet, Parity};
use crate::scalar::{int, rat, Rational};

/// Truncated Wilson coefficients `(A_n, C_n)` for `0 <= n <= N+1`.
///
/// The special rows (`n = j` for `A`, `n = j+1` for `C` when `N` is odd; `n = j`
/// for both when `N` is even) are dispatched by index: the generic forms are
/// singular or wrong exactly there.
pub fn wilson_ac(params: &ParamSet, n: usize) -> Result<(Rational, Rational)> {
    let big_n = params.max_degree();
    if n > big_n + 1 {
        return Err(Error::IndexOutOfRange { index: n, max: big_n + 1 });
    }
    let (a, c, alpha) = (params.a(), params.c(), params.alpha());
    let j = params.j();
    let (ni, nn, ji) = (int(n as i64), int(big_n as i64), int(j as i64));
    let one = Rational::one();
    let sum = a + c;
    Ok(match params.parity() {
        Parity::Odd => {
            let middle = (&ji + &one) * (&ji + &sum) * (a - c);
            let big_a = if n == j {
                alpha * &middle
            } else {
                (&ni - &nn) * (&ni + &sum) * (&ni + a - c - &ji) / (int(2) * (int(2) * &ni - &nn))
            };
            let big_c = if n == j + 1 {
                (&one - alpha) * &middle
            } else {
                &ni * (&ni - &ji - &one - a + c) * (&ni - &nn - &sum) * (&ni - &ji - &one)
                    / ((int(2) * &ni - &one - &nn) * (int(2) * &ni - &nn))
            };
            (big_a, big_c)
        }
        Parity::Even => {
            let middle = &ji * (&ji + &sum) * (c - a - &one);
            if n == j {
                (alpha * &middle, (&one - alpha) * &middle)
            } else {
                let big_a = (&ni - &nn) * (&ni + &sum) * (&ni + a - c - &ji + &one)
                    / (int(2) * (int(2) * &ni + &one - &nn));
                let big_c = &ni * (&ni - &nn - &sum) * (&ni - &ji - &one + c - a)
                    / (int(2) * (int(2) * &ni - &one - &nn));
                (big_a, big_c)
            }
        }
    })
}

/// A recurrence coefficient addressed by kind and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    B(usize),
    U(usize),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::B(n) => write!(f, "b_{n}"),
            Entry::U(n) => write!(f, "u_{n}"),
        }
    }
}

/// `b_0..b_N` and `u_0..u_{N+1}` with `u_0 = u_{N+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceTable {
    b: Vec<Rational>,
    u: Vec<Rational>,
}

impl RecurrenceTable {
    /// Builds a table from `b_0..b_N` and `u_1..u_N`.
    pub fn from_parts(b: Vec<Rational>, u_interior: Vec<Rational>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::TableShape("empty b".into()));
        }
        if u_interior.len() + 1 != b.len() {
            return Err(Error::TableShape(format!(
                "{} b entries need {} u entries, got {}",
                b.len(),
                b.len() - 1,
                u_interior.len()
            )));
        }
        let mut u = Vec::with_capacity(b.len() + 1);
        u.push(Rational::zero());
        u.extend(u_interior);
        u.push(Rational::zero());
        Ok(Self { b, u })
    }

    /// The piecewise closed-form displays for `b_n` and `u_n`.
    pub fn closed_form(params: &ParamSet) -> Self {
        let big_n = params.max_degree();
        let j = params.j();
        let (a, c, alpha) = (params.a(), params.c(), params.alpha());
        let (nn, ji) = (int(big_n as i64), int(j as i64));
        let one = Rational::one();
        let half = rat(1, 2);
        let sum = a + c;
        let a2 = a * a;
        let mut b = Vec::with_capacity(big_n + 1);
        let mut u = vec![Rational::zero(); big_n + 2];
        match params.parity() {
            Parity::Odd => {
                let middle_base = -&a2 - &half * &ji * (&one + a - c) * (&one + &sum + &ji);
                let middle_shift = (a - c) * (&one + &ji) * (&sum + &ji);
                for n in 0..=big_n {
                    let ni = int(n as i64);
                    b.push(if n == j {
                        &middle_base + alpha * &middle_shift
                    } else if n == j + 1 {
                        &middle_base + (&one - alpha) * &middle_shift
                    } else {
                        -&half * (a * (a + &ji) + c * (c + &ji) + &ni * (&nn - &ni))
                    });
                }
                for n in 1..=big_n {
                    let ni = int(n as i64);
                    u[n] = if n == j + 1 {
                        let d = a - c;
                        let s = &sum + &ji;
                        alpha * (&one - alpha) * &d * &d * (&one + &ji) * (&one + &ji) * &s * &s
                    } else {
                        let shift = &ni - &ji - &one;
                        &ni * (&nn + &one - &ni) * (&nn - &ni + &sum) * (&ni - &one + &sum)
                            * (&shift * &shift - (a - c) * (a - c))
                            / (int(4) * (&nn - int(2) * &ni) * (&nn - int(2) * &ni + int(2)))
                    };
                }
            }
            Parity::Even => {
                for n in 0..=big_n {
                    let ni = int(n as i64);
                    b.push(
                        (&ni - &nn) * (&ni + &sum) * (&ni + a - c - &ji + &one)
                            / (int(2) * (int(2) * &ni + &one - &nn))
                            + &ni * (&ni - &nn - &sum) * (&ni - &ji - &one + c - a)
                                / (int(2) * (int(2) * &ni - &one - &nn))
                            - &a2,
                    );
                }
                let middle = -&half * &ji * (&ji + &one) * (a - c) * (a - c + &one) * (&sum + &ji - &one) * (&sum + &ji);
                for n in 1..=big_n {
                    let ni = int(n as i64);
                    u[n] = if n == j {
                        (&one - alpha) * &middle
                    } else if n == j + 1 {
                        alpha * &middle
                    } else {
                        let den = &nn - int(2) * &ni + &one;
                        &ni * (int(2) * &ji - &ni + &one)
                            * (&sum + &ni - &one)
                            * (a - c + &ji - &ni + &one)
                            * (c - a + &ji - &ni)
                            * (&sum + int(2) * &ji - &ni)
                            / (int(4) * &den * &den)
                    };
                }
            }
        }
        Self { b, u }
    }

    /// `b_n = A_n + C_n - a²`, `u_n = A_{n-1} C_n`.
    pub fn from_wilson(params: &ParamSet) -> Self {
        let big_n = params.max_degree();
        let a2 = params.a() * params.a();
        let ac: Vec<_> = (0..=big_n)
            .map(|n| wilson_ac(params, n).expect("index in range"))
            .collect();
        let b = ac.iter().map(|(big_a, big_c)| big_a + big_c - &a2).collect();
        let mut u = vec![Rational::zero(); big_n + 2];
        for n in 1..=big_n {
            u[n] = &ac[n - 1].0 * &ac[n].1;
        }
        Self { b, u }
    }

    pub fn max_degree(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self, n: usize) -> &Rational {
        &self.b[n]
    }

    /// `u_n` for `0 <= n <= N+1` (zero at both ends).
    pub fn u(&self, n: usize) -> &Rational {
        &self.u[n]
    }

    pub fn b_values(&self) -> &[Rational] {
        &self.b
    }

    /// `u_1..u_N`.
    pub fn u_interior(&self) -> &[Rational] {
        &self.u[1..self.u.len() - 1]
    }

    pub fn get(&self, entry: Entry) -> &Rational {
        match entry {
            Entry::B(n) => &self.b[n],
            Entry::U(n) => &self.u[n],
        }
    }

    pub fn set(&mut self, entry: Entry, value: Rational) {
        match entry {
            Entry::B(n) => self.b[n] = value,
            Entry::U(n) => self.u[n] = value,
        }
    }

    /// `u_1 u_2 ... u_n`.
    pub fn u_product(&self, n: usize) -> Rational {
        self.u[1..=n].iter().fold(Rational::one(), |acc, u| acc * u)
    }

    /// Entries where the two tables differ, `b` first then `u`.
    pub fn differing_entries(&self, other: &RecurrenceTable) -> Vec<Entry> {
        let mut out = Vec::new();
        for n in 0..self.b.len().min(other.b.len()) {
            if self.b[n] != other.b[n] {
                out.push(Entry::B(n));
            }
        }
        for n in 1..self.u.len().min(other.u.len()) - 1 {
            if self.u[n] != other.u[n] {
                out.push(Entry::U(n));
            }
        }
        out
    }

    /// Entries that break `b_n = b_{N-n}`, `u_n = u_{N+1-n}`.
    pub fn mirror_breaking(&self) -> Vec<Entry> {
        let big_n = self.max_degree();
        let mut out = Vec::new();
        for n in 0..=big_n {
            if self.b[n] != self.b[big_n - n] {
                out.push(Entry::B(n));
            }
        }
        for n in 1..=big_n {
            if self.u[n] != self.u[big_n + 1 - n] {
                out.push(Entry::U(n));
            }
        }
        out
    }

    /// `RJR = J` at the level of exact coefficients.
    pub fn is_persymmetric(&self) -> bool {
        self.mirror_breaking().is_empty()
    }
}

/// The closed-form table, cross-checked against the Wilson composition.
pub fn recurrence_table(params: &ParamSet) -> Result<RecurrenceTable> {
    let closed = RecurrenceTable::closed_form(params);
    let composed = RecurrenceTable::from_wilson(params);
    if let Some(entry) = closed.differing_entries(&composed).first() {
        return Err(Error::Singular(format!("coefficient routes disagree at {entry}")));
    }
    Ok(closed)
}

/// Monic `P_n(λ)` by forward recurrence, `0 <= n <= N+1`.
///
/// `n = N+1` gives the characteristic polynomial (the truncation `u_{N+1}`
/// is never read). Generic over the scalar so the same routine serves
/// rational and Gaussian-rational arguments.
pub fn eval_poly<T>(table: &RecurrenceTable, n: usize, lambda: T) -> Result<T>
where
    T: Clone + From<Rational> + Sub<Output = T> + Mul<Output = T>,
{
    let big_n = table.max_degree();
    if n > big_n + 1 {
        return Err(Error::IndexOutOfRange { index: n, max: big_n + 1 });
    }
    Ok(eval_all(table, n, lambda).pop().expect("non-empty"))
}

/// `[P_0(λ), ..., P_n(λ)]`.
pub fn eval_all<T>(table: &RecurrenceTable, n: usize, lambda: T) -> Vec<T>
where
    T: Clone + From<Rational> + Sub<Output = T> + Mul<Output = T>,
{
    let mut out: Vec<T> = Vec::with_capacity(n + 1);
    out.push(T::from(Rational::one()));
    for k in 0..n {
        let next = (lambda.clone() - T::from(table.b[k].clone())) * out[k].clone();
        let next = if k == 0 {
            next
        } else {
            next - T::from(table.u[k].clone()) * out[k - 1].clone()
        };
        out.push(next);
    }
    out
}

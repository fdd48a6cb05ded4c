//! Seeded sampler of in-regime parameter sets.
#![allow(dead_code)]

use para_racah::scalar::{int, rat, Rational};
use para_racah::{validate, ParamSet, Parity, Regime};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const REGIMES: [Regime; 4] = [Regime::OddInner, Regime::OddOuter, Regime::EvenInner, Regime::EvenOuter];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random `p/q` strictly inside `(lo, hi)`, `q ≤ 12`, never an integer.
pub fn open_fraction(rng: &mut StdRng, lo: i64, hi: i64) -> Rational {
    assert!(lo < hi);
    loop {
        let q = rng.gen_range(2..=12i64);
        let p = rng.gen_range(lo * q + 1..hi * q);
        if p % q != 0 {
            return rat(p, q);
        }
    }
}

pub fn alpha(rng: &mut StdRng) -> Rational {
    open_fraction(rng, 0, 1)
}

pub fn regime_parity(regime: Regime) -> Parity {
    match regime {
        Regime::OddInner | Regime::OddOuter => Parity::Odd,
        Regime::EvenInner | Regime::EvenOuter => Parity::Even,
    }
}

/// Random degree of the given parity in `1..=max` (`2..=max` when even).
pub fn degree(rng: &mut StdRng, parity: Parity, max: usize) -> usize {
    match parity {
        Parity::Odd => 2 * rng.gen_range(0..=(max - 1) / 2) + 1,
        Parity::Even => 2 * rng.gen_range(1..=max / 2),
    }
}

fn sum_and_gap(rng: &mut StdRng, regime: Regime, n: usize) -> (Rational, Rational) {
    let j = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 } as i64;
    let ni = n as i64;
    let outer_sum = |rng: &mut StdRng| {
        if rng.gen_bool(0.5) {
            open_fraction(rng, 0, 6)
        } else {
            open_fraction(rng, -ni - 5, -ni + 1)
        }
    };
    match regime {
        Regime::OddOuter => (outer_sum(rng), open_fraction(rng, -1, 1)),
        Regime::EvenOuter => (outer_sum(rng), open_fraction(rng, 0, 1)),
        Regime::OddInner => {
            let gap = open_fraction(rng, j, j + 6);
            let gap = if rng.gen_bool(0.5) { gap } else { -gap };
            (open_fraction(rng, -j - 1, -j + 1), gap)
        }
        Regime::EvenInner => {
            let gap = if rng.gen_bool(0.5) { open_fraction(rng, j, j + 6) } else { open_fraction(rng, -j - 5, -j + 1) };
            (open_fraction(rng, -j, -j + 1), gap)
        }
    }
}

/// In-regime parameter set with `validate` confirming the requested regime.
pub fn sample_in(rng: &mut StdRng, regime: Regime, n: usize, alpha: Rational) -> ParamSet {
    assert_eq!(n % 2 == 1, regime_parity(regime) == Parity::Odd);
    for _ in 0..1000 {
        let (sum, gap) = sum_and_gap(rng, regime, n);
        let a = (&sum - &gap) / int(2);
        let c = (&sum + &gap) / int(2);
        if let Ok(p) = validate(n, a, c, alpha.clone()) {
            if p.regime() == regime {
                return p;
            }
        }
    }
    panic!("no valid parameters found for {regime:?}, N = {n}");
}

/// Random regime of the given parity, random degree up to `max_n`, random interior alpha.
pub fn sample(rng: &mut StdRng, parity: Parity, max_n: usize) -> ParamSet {
    let regime = match (parity, rng.gen_bool(0.5)) {
        (Parity::Odd, true) => Regime::OddInner,
        (Parity::Odd, false) => Regime::OddOuter,
        (Parity::Even, true) => Regime::EvenInner,
        (Parity::Even, false) => Regime::EvenOuter,
    };
    let n = degree(rng, parity, max_n);
    let al = alpha(rng);
    sample_in(rng, regime, n, al)
}

//! Exact Bernoulli numbers with the convention `B_1 = -1/2`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mp::{PrecisionContext, Rational, Real};

pub const MAX_INDEX: usize = 400;

/// Grow-only table of even-index Bernoulli numbers `B_0, B_2, B_4, ...`.
///
/// Readers share the table; growth happens under the write lock, one writer
/// at a time.
pub struct BernoulliCache {
    even: RwLock<Vec<Rational>>,
}

impl BernoulliCache {
    fn new() -> Self {
        BernoulliCache { even: RwLock::new(vec![Rational::one()]) }
    }

    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    /// `B_n` for even `n`.
    pub fn get(&self, n: usize) -> Rational {
        debug_assert!(n.is_multiple_of(2));
        let idx = n / 2;
        if let Some(b) = self.even.read().expect("bernoulli lock").get(idx) {
            return b.clone();
        }
        let mut table = self.even.write().expect("bernoulli lock");
        while table.len() <= idx {
            let m = 2 * table.len();
            let b = next_even(&table, m);
            table.push(b);
        }
        table[idx].clone()
    }

    pub fn len(&self) -> usize {
        self.even.read().expect("bernoulli lock").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

// sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m; only B_1 and even j are nonzero
fn next_even(table: &[Rational], m: usize) -> Rational {
    let mut binom = BigInt::one(); // C(m+1, j) as j advances
    let mut acc = Rational::zero();
    for j in 0..m {
        if j == 1 {
            acc += Rational::new(-binom.clone(), BigInt::from(2));
        } else if j % 2 == 0 {
            acc += &table[j / 2] * Rational::from_integer(binom.clone());
        }
        binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
    }
    -acc / Rational::from_integer(BigInt::from(m + 1))
}

/// Exact `B_n` for even `0 <= n <= 400`.
///
/// ```
/// use zeta_identities::specfun::bernoulli;
///
/// assert_eq!(bernoulli(4).unwrap().to_string(), "-1/30");
/// assert_eq!(bernoulli(20).unwrap().to_string(), "-174611/330");
/// assert!(bernoulli(3).is_err());
/// ```
pub fn bernoulli(n: usize) -> Result<Rational> {
    if n % 2 == 1 {
        return Err(Error::Usage(format!("bernoulli index must be even, got {n}")));
    }
    if n > MAX_INDEX {
        return Err(Error::Usage(format!("bernoulli index limited to {MAX_INDEX}, got {n}")));
    }
    Ok(BernoulliCache::global().get(n))
}

/// `B_{2j}` rounded to the context, memoized per precision.
pub(crate) fn bernoulli_real(two_j: usize, ctx: &PrecisionContext) -> Real {
    static REALS: OnceLock<Mutex<HashMap<(usize, usize), Real>>> = OnceLock::new();
    let key = (two_j, ctx.bits());
    let map = REALS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = map.lock().expect("bernoulli reals").get(&key) {
        return r.clone();
    }
    let r = Real::from_rational(&BernoulliCache::global().get(two_j), ctx);
    map.lock().expect("bernoulli reals").insert(key, r.clone());
    r
}

//! Binomial coefficients, lexicographic (un)ranking of fixed-degree
//! monomials, and the bitmap used for degree-slice coverage bookkeeping.

/// Pascal's triangle up to n = 64. `C(64, 32)` still fits in a `u64`.
const TABLE_DIM: usize = 65;

const fn build_table() -> [[u64; TABLE_DIM]; TABLE_DIM] {
    let mut t = [[0u64; TABLE_DIM]; TABLE_DIM];
    let mut i = 0;
    while i < TABLE_DIM {
        t[i][0] = 1;
        let mut j = 1;
        while j <= i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
            j += 1;
        }
        i += 1;
    }
    t
}

static BINOM: [[u64; TABLE_DIM]; TABLE_DIM] = build_table();

/// `C(n, k)` for `n <= 64`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n || n as usize >= TABLE_DIM {
        if n as usize >= TABLE_DIM {
            panic!("binomial table supports n <= 64, got {n}");
        }
        return 0;
    }
    BINOM[n as usize][k as usize]
}

/// `C(n, k)` with arbitrary `n`, capped: returns `None` once the value
/// exceeds `cap`. Intermediate products stay within `u128` as long as
/// `cap * n` does, which holds for every budget this crate accepts.
pub fn binomial_capped(n: u64, k: u64, cap: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
        if acc > cap as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Lexicographic rank of the set bits of `bits` (1-based variable indices,
/// bit `i-1` set means index `i`) among all `d`-subsets of `1..=n`.
pub fn rank(n: u32, d: u32, bits: u64) -> u64 {
    debug_assert_eq!(bits.count_ones(), d);
    let mut r = 0u64;
    let mut remaining = d;
    for v in 1..=n {
        if remaining == 0 {
            break;
        }
        if bits & (1u64 << (v - 1)) != 0 {
            remaining -= 1;
        } else {
            // Skipping index v: every completion that starts with v comes first.
            r += binomial(n - v, remaining - 1);
        }
    }
    r
}

/// Inverse of [`rank`]: the `r`-th (0-based) `d`-subset of `1..=n` in
/// lexicographic order, as a bitset.
pub fn unrank(n: u32, d: u32, mut r: u64) -> u64 {
    let mut bits = 0u64;
    let mut remaining = d;
    let mut v = 1;
    while remaining > 0 {
        let with_v = binomial(n - v, remaining - 1);
        if r < with_v {
            bits |= 1u64 << (v - 1);
            remaining -= 1;
        } else {
            r -= with_v;
        }
        v += 1;
    }
    bits
}

/// Fixed-capacity bitmap tracking which ranks of a degree slice are marked.
#[derive(Clone)]
pub struct Bitmap {
    words: Vec<u64>,
    len: u64,
    count: u64,
}

impl Bitmap {
    pub fn new(len: u64) -> Bitmap {
        let words = vec![0u64; len.div_ceil(64) as usize];
        Bitmap { words, len, count: 0 }
    }

    pub fn insert(&mut self, idx: u64) {
        debug_assert!(idx < self.len);
        let w = &mut self.words[(idx / 64) as usize];
        let mask = 1u64 << (idx % 64);
        if *w & mask == 0 {
            *w |= mask;
            self.count += 1;
        }
    }

    pub fn contains(&self, idx: u64) -> bool {
        debug_assert!(idx < self.len);
        self.words[(idx / 64) as usize] & (1u64 << (idx % 64)) != 0
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_full(&self) -> bool {
        self.count == self.len
    }

    /// Iterate the marked ranks in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi as u64 * 64;
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    Some(base + b)
                }
            })
        })
    }
}

//! Hadamard matrices: Sylvester doubling, both Paley constructions and Kronecker products.

use serde::Serialize;

use crate::error::{Error, Result};

/// A square `±1` matrix with `H Hᵀ = m I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    /// Wraps `entries`, verifying the defining identity in integer arithmetic.
    pub fn from_entries(entries: Vec<Vec<i8>>) -> Result<Self> {
        let h = Self {
            order: entries.len(),
            entries,
        };
        if h.order == 0 || !h.is_valid() {
            return Err(Error::InvalidInput("not a Hadamard matrix".into()));
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    /// `H Hᵀ` with exact integer products.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let m = self.order;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        self.entries[i]
                            .iter()
                            .zip(&self.entries[j])
                            .map(|(&a, &b)| (a as i64) * (b as i64))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        let m = self.order;
        if self
            .entries
            .iter()
            .any(|r| r.len() != m || r.iter().any(|&v| v != 1 && v != -1))
        {
            return false;
        }
        let g = self.gram();
        (0..m).all(|i| (0..m).all(|j| g[i][j] == if i == j { m as i64 } else { 0 }))
    }

    /// Rows negated so that the first column is all `+1`.
    pub fn normalized(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|r| {
                if r[0] < 0 {
                    r.iter().map(|v| -v).collect()
                } else {
                    r.clone()
                }
            })
            .collect();
        Self {
            order: self.order,
            entries,
        }
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let (a, b) = (self.order, other.order);
        let mut entries = vec![vec![0i8; a * b]; a * b];
        for i in 0..a {
            for j in 0..a {
                for k in 0..b {
                    for l in 0..b {
                        entries[i * b + k][j * b + l] = self.entries[i][j] * other.entries[k][l];
                    }
                }
            }
        }
        Self {
            order: a * b,
            entries,
        }
    }
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Quadratic character of `GF(q)`, `q` an odd prime.
fn quadratic_character(q: usize) -> Vec<i8> {
    let mut chi = vec![-1i8; q];
    chi[0] = 0;
    for x in 1..q {
        chi[x * x % q] = 1;
    }
    chi
}

/// `Q_ij = χ(j − i)` over `GF(q)`.
fn jacobsthal(q: usize) -> Vec<Vec<i8>> {
    let chi = quadratic_character(q);
    (0..q)
        .map(|i| (0..q).map(|j| chi[(j + q - i) % q]).collect())
        .collect()
}

fn sylvester(m: usize) -> HadamardMatrix {
    let mut h = HadamardMatrix {
        order: 1,
        entries: vec![vec![1]],
    };
    let base = HadamardMatrix {
        order: 2,
        entries: vec![vec![1, 1], vec![1, -1]],
    };
    while h.order < m {
        h = base.kronecker(&h);
    }
    h
}

/// Order `q + 1` for a prime `q ≡ 3 (mod 4)`: `H = I + [[0, 1ᵀ], [−1, Q]]`.
fn paley_one(q: usize) -> HadamardMatrix {
    let jac = jacobsthal(q);
    let m = q + 1;
    let mut e = vec![vec![0i8; m]; m];
    for j in 1..m {
        e[0][j] = 1;
        e[j][0] = -1;
    }
    for i in 0..q {
        for j in 0..q {
            e[i + 1][j + 1] = jac[i][j];
        }
    }
    for (i, row) in e.iter_mut().enumerate() {
        row[i] += 1;
    }
    HadamardMatrix {
        order: m,
        entries: e,
    }
}

/// Order `2(q + 1)` for a prime `q ≡ 1 (mod 4)`: the symmetric conference matrix
/// `[[0, 1ᵀ], [1, Q]]` with `0 ↦ [[1,−1],[−1,−1]]` and `±1 ↦ ±[[1,1],[1,−1]]`.
fn paley_two(q: usize) -> HadamardMatrix {
    let jac = jacobsthal(q);
    let c = q + 1;
    let mut conf = vec![vec![0i8; c]; c];
    for j in 1..c {
        conf[0][j] = 1;
        conf[j][0] = 1;
    }
    for i in 0..q {
        for j in 0..q {
            conf[i + 1][j + 1] = jac[i][j];
        }
    }
    let m = 2 * c;
    let mut e = vec![vec![0i8; m]; m];
    for i in 0..c {
        for j in 0..c {
            let block = match conf[i][j] {
                0 => [[1, -1], [-1, -1]],
                s => [[s, s], [s, -s]],
            };
            for a in 0..2 {
                for b in 0..2 {
                    e[2 * i + a][2 * j + b] = block[a][b];
                }
            }
        }
    }
    HadamardMatrix {
        order: m,
        entries: e,
    }
}

fn build(m: usize) -> Option<HadamardMatrix> {
    if m == 1 || m == 2 || m.is_power_of_two() {
        return Some(sylvester(m));
    }
    if m % 4 != 0 {
        return None;
    }
    if is_prime(m - 1) && (m - 1) % 4 == 3 {
        return Some(paley_one(m - 1));
    }
    if is_prime(m / 2 - 1) && (m / 2 - 1) % 4 == 1 {
        return Some(paley_two(m / 2 - 1));
    }
    // Kronecker products, smallest factor first.
    let mut a = 2;
    while a * a <= m {
        if m % a == 0 {
            if let (Some(x), Some(y)) = (build(a), build(m / a)) {
                return Some(x.kronecker(&y));
            }
        }
        a += 1;
    }
    None
}

/// A Hadamard matrix of order `m`, deterministic per `m`.
pub fn hadamard(m: usize) -> Result<HadamardMatrix> {
    if m == 0 {
        return Err(Error::NotConstructible { order: m });
    }
    build(m).ok_or(Error::NotConstructible { order: m })
}

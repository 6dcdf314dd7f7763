use super::field::{prime_power, FiniteField};
use super::IncidenceStructure;
use crate::error::{Error, Result};

/// A square ±1 matrix with mutually orthogonal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    entries: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    /// Wraps `entries`, checking `H·Hᵀ = n·I`.
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let h = Self { entries };
        if h.is_orthogonal() {
            Ok(h)
        } else {
            Err(Error::Argument("rows are not a Hadamard system".into()))
        }
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn is_orthogonal(&self) -> bool {
        let n = self.order();
        self.entries
            .iter()
            .all(|row| row.len() == n && row.iter().all(|&e| e == 1 || e == -1))
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let dot: i64 = self.entries[i]
                        .iter()
                        .zip(&self.entries[j])
                        .map(|(&a, &b)| (a * b) as i64)
                        .sum();
                    dot == if i == j { n as i64 } else { 0 }
                })
            })
    }

    pub fn is_normalized(&self) -> bool {
        self.entries.iter().all(|row| row[0] == 1) && self.entries.first().is_none_or(|row| row.iter().all(|&e| e == 1))
    }

    /// Negates rows and columns so the first row and column are all +1.
    fn normalize(&mut self) {
        for row in self.entries.iter_mut() {
            if row[0] == -1 {
                row.iter_mut().for_each(|e| *e = -*e);
            }
        }
        let n = self.order();
        for j in 0..n {
            if self.entries[0][j] == -1 {
                for row in self.entries.iter_mut() {
                    row[j] = -row[j];
                }
            }
        }
    }

    /// `[[H, H], [H, −H]]`.
    fn doubled(&self) -> Self {
        let n = self.order();
        let mut entries = vec![vec![0i8; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let e = self.entries[i][j];
                entries[i][j] = e;
                entries[i][j + n] = e;
                entries[i + n][j] = e;
                entries[i + n][j + n] = -e;
            }
        }
        Self { entries }
    }

    /// The matrix with its first row and column removed.
    pub fn core(&self) -> Vec<Vec<i8>> {
        self.entries[1..].iter().map(|row| row[1..].to_vec()).collect()
    }
}

/// A normalized Hadamard matrix of the given order, built by Sylvester
/// doubling and the Paley type-I construction (for `order − 1` a prime power
/// congruent to 3 mod 4), composed with doubling.
pub fn hadamard_matrix(order: usize) -> Result<HadamardMatrix> {
    let mut h = build(order).ok_or(Error::UnsupportedOrder(order))?;
    h.normalize();
    debug_assert!(h.is_orthogonal() && h.is_normalized());
    Ok(h)
}

fn build(order: usize) -> Option<HadamardMatrix> {
    match order {
        0 => None,
        1 => Some(HadamardMatrix { entries: vec![vec![1]] }),
        2 => Some(HadamardMatrix {
            entries: vec![vec![1, 1], vec![1, -1]],
        }),
        n if n % 4 != 0 => None,
        n if n.is_power_of_two() => build(n / 2).map(|h| h.doubled()),
        n => {
            if let Some(h) = paley_one(n) {
                return Some(h);
            }
            build(n / 2).map(|h| h.doubled())
        }
    }
}

fn paley_one(order: usize) -> Option<HadamardMatrix> {
    let q = order - 1;
    if q % 4 != 3 || u32::try_from(q).is_err() || prime_power(q as u64).is_none() {
        return None;
    }
    let field = FiniteField::with_order(q as u32).ok()?;
    // H = I + S with S = [[0, 1ᵀ], [−1, Q]] and Q the Jacobsthal matrix.
    let mut entries = vec![vec![0i8; order]; order];
    for j in 1..order {
        entries[0][j] = 1;
        entries[j][0] = -1;
    }
    for a in 0..q {
        for b in 0..q {
            entries[a + 1][b + 1] = field.quadratic_character(field.sub(a as u32, b as u32));
        }
    }
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] += 1;
    }
    Some(HadamardMatrix { entries })
}

/// The Hadamard 3-design `H₃(t)` on `4t` points.
///
/// Incidence matrix `[[H₁, H₂], [1, 0]]` with `H₁ = (J + A)/2`,
/// `H₂ = (J − A)/2` and `A` the core of a normalized Hadamard matrix of order
/// `4t`. Block `j` and block `j + 4t − 1` are complements.
pub fn hadamard3_design(t: usize) -> Result<IncidenceStructure> {
    if t == 0 {
        return Err(Error::Argument("t must be positive".into()));
    }
    let h = hadamard_matrix(4 * t)?;
    let core = h.core();
    let n = 4 * t - 1;
    let mut blocks = vec![Vec::new(); 2 * n];
    for (x, row) in core.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            if a == 1 {
                blocks[j].push(x);
            } else {
                blocks[j + n].push(x);
            }
        }
    }
    for block in blocks.iter_mut().take(n) {
        block.push(n);
    }
    Ok(IncidenceStructure::from_parts(4 * t, blocks, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{verify_block_design, DesignParams};

    #[test]
    fn sylvester_order_four() {
        let h = hadamard_matrix(4).unwrap();
        assert_eq!(
            h.entries(),
            &[
                vec![1, 1, 1, 1],
                vec![1, -1, 1, -1],
                vec![1, 1, -1, -1],
                vec![1, -1, -1, 1]
            ]
        );
    }

    #[test]
    fn paley_order_twelve() {
        let h = hadamard_matrix(12).unwrap();
        assert!(h.is_orthogonal());
        assert!(h.is_normalized());
    }

    #[test]
    fn constructible_orders() {
        for n in [
            1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 40, 44, 48, 56, 60, 64, 68, 72, 80, 84, 96, 104, 108, 128,
        ] {
            let h = hadamard_matrix(n).unwrap_or_else(|e| panic!("order {n}: {e}"));
            assert!(h.is_orthogonal() && h.is_normalized(), "order {n}");
        }
    }

    #[test]
    fn unsupported_orders_fail_loudly() {
        for n in [0, 3, 5, 6, 10, 18] {
            assert_eq!(hadamard_matrix(n), Err(Error::UnsupportedOrder(n)));
        }
        // 36 and 92 are Hadamard orders but none of the implemented constructions reach it
        assert_eq!(hadamard_matrix(92), Err(Error::UnsupportedOrder(92)));
        assert_eq!(hadamard_matrix(36), Err(Error::UnsupportedOrder(36)));
    }

    #[test]
    fn rejects_non_hadamard_entries() {
        assert!(HadamardMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn three_designs() {
        for t in 1..=7 {
            let s = hadamard3_design(t).unwrap();
            let p = verify_block_design(&s).unwrap();
            assert_eq!(
                p,
                DesignParams {
                    v: 4 * t,
                    b: 8 * t - 2,
                    r: 4 * t - 1,
                    k: 2 * t,
                    lambda: 2 * t - 1
                }
            );
            let n = 4 * t - 1;
            for j in 0..n {
                let mut union: Vec<usize> = s.block(j).iter().chain(s.block(j + n)).copied().collect();
                assert_eq!(union.len(), 4 * t);
                union.sort_unstable();
                assert_eq!(union, (0..4 * t).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn three_design_of_order_four_is_the_four_two_design() {
        let s = hadamard3_design(1).unwrap();
        assert_eq!(
            s.incidence_matrix(),
            vec![
                vec![0, 1, 0, 1, 0, 1],
                vec![1, 0, 0, 0, 1, 1],
                vec![0, 0, 1, 1, 1, 0],
                vec![1, 1, 1, 0, 0, 0],
            ]
        );
    }
}

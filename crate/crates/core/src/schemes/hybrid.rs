//! Block-flip construction reaching depth `ceil(N/d)`.
//!
//! The register is cut into `d` contiguous blocks; each ladder state `u'_j`
//! is the uniform superposition of all ways of flipping `j` whole blocks up.
//! Qubit `q` sits on bit `q` of a basis index (1 = up).

use super::{su2_generators, RealizedScheme, SchemeBody, SchemeSpec};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, ComplexVector, C64, I, ONE};

/// Effective `|alpha|` of the block-flip Hamiltonian on its ladder.
///
/// Each block operator `X⊗..⊗X` swaps the block's polarised states with unit
/// amplitude, so the sum over blocks acts as `2 J^x` on the ladder.
pub const HYBRID_EFFECTIVE_FIELD: f64 = 2.0;

/// Contiguous block sizes, starting at qubit 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    pub sizes: Vec<usize>,
}

impl BlockLayout {
    /// Bit mask of each block.
    pub fn masks(&self) -> Vec<usize> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let m = ((1usize << s) - 1) << start;
                start += s;
                m
            })
            .collect()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }
}

/// `d - 1` blocks of `k = ceil(N/d)` followed by one block of `r = N - (d-1)k`.
/// When `r < 1` the blocks are balanced instead (sizes differ by at most one,
/// larger blocks first), which keeps the largest block at `ceil(N/d)`.
pub fn block_layout(n: usize, d: usize) -> Result<BlockLayout> {
    if d == 0 || d > n {
        return Err(Error::InvalidArgument(format!("need 1 <= d <= N, got d = {d}, N = {n}")));
    }
    let k = n.div_ceil(d);
    let sizes = if n > (d - 1) * k {
        let mut sizes = vec![k; d - 1];
        sizes.push(n - (d - 1) * k);
        sizes
    } else {
        let (q, extra) = (n / d, n % d);
        (0..d).map(|b| if b < extra { q + 1 } else { q }).collect()
    };
    Ok(BlockLayout { sizes })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge { qubits: n, cap });
    }
    Ok(())
}

/// `u'_j`: uniform superposition over the `C(d, j)` choices of `j` up-blocks.
pub fn hybrid_basis(n: usize, d: usize, j: usize) -> Result<ComplexVector> {
    check_cap(n, Limits::DEFAULT.oracle_max_qubits)?;
    let layout = block_layout(n, d)?;
    if j > d {
        return Err(Error::InvalidArgument(format!("ladder index {j} exceeds d = {d}")));
    }
    let masks = layout.masks();
    let mut v = ComplexVector::zeros(1 << n);
    let mut count = 0usize;
    for choice in 0usize..(1 << d) {
        if choice.count_ones() as usize != j {
            continue;
        }
        let idx = (0..d)
            .filter(|b| choice >> b & 1 == 1)
            .fold(0, |acc, b| acc | masks[b]);
        v[idx] = ONE;
        count += 1;
    }
    Ok(v.scale(C64::new(1.0 / (count as f64).sqrt(), 0.0)))
}

/// Product of per-block states `cos(x)|down..> - i e^{-i theta} sin(x)|up..>`
/// with `x = |alpha| t / 2`.
pub fn hybrid_evolved(n: usize, d: usize, theta: f64, alpha_norm: f64, t: f64) -> Result<ComplexVector> {
    check_cap(n, Limits::DEFAULT.oracle_max_qubits)?;
    let masks = block_layout(n, d)?.masks();
    let (s, c) = (alpha_norm * t / 2.0).sin_cos();
    let down = C64::new(c, 0.0);
    let up = -I * C64::from_polar(1.0, -theta) * s;
    let mut v = ComplexVector::zeros(1 << n);
    for choice in 0usize..(1 << d) {
        let mut idx = 0;
        let mut amp = ONE;
        for (b, m) in masks.iter().enumerate() {
            if choice >> b & 1 == 1 {
                idx |= m;
                amp *= up;
            } else {
                amp *= down;
            }
        }
        v[idx] = amp;
    }
    Ok(v)
}

/// Dense `sum_blocks X⊗..⊗X + d/2` on the full register.
pub fn hybrid_hamiltonian(n: usize, d: usize) -> Result<ComplexMatrix> {
    check_cap(n, Limits::DEFAULT.register_matrix_qubits)?;
    let masks = block_layout(n, d)?.masks();
    let dim = 1usize << n;
    let mut h = ComplexMatrix::identity(dim).scale_real(d as f64 / 2.0);
    for idx in 0..dim {
        for m in &masks {
            h[(idx ^ m, idx)] += ONE;
        }
    }
    Ok(h)
}

/// Hybrid scheme on its `(d+1)`-level ladder: `2 (cos(theta) Jx + sin(theta) Jy) + d/2`.
pub fn build_hybrid(n: usize, d: usize, theta: f64) -> Result<RealizedScheme> {
    block_layout(n, d)?;
    let g = su2_generators(d)?;
    let (s, c) = theta.sin_cos();
    let h = &(&g.jx.scale_real(HYBRID_EFFECTIVE_FIELD * c) + &g.jy.scale_real(HYBRID_EFFECTIVE_FIELD * s))
        + &ComplexMatrix::identity(d + 1).scale_real(d as f64 / 2.0);
    let scheme = RealizedScheme {
        spec: SchemeSpec::Hybrid { n, d, theta },
        n_qubits: d,
        d,
        body: SchemeBody::Subspace(h),
        embedding: None,
        fully_charging_capable: true,
        mirror_symmetric: None,
        closed_form_time: Some(std::f64::consts::PI / HYBRID_EFFECTIVE_FIELD),
    };
    scheme.with_qubits(n)
}

/// Hybrid scheme realised on the full register (`theta = 0`).
pub fn build_hybrid_register(n: usize, d: usize) -> Result<RealizedScheme> {
    let h = hybrid_hamiltonian(n, d)?;
    Ok(RealizedScheme {
        spec: SchemeSpec::Hybrid { n, d, theta: 0.0 },
        n_qubits: n,
        d,
        body: SchemeBody::Register(h),
        embedding: None,
        fully_charging_capable: true,
        mirror_symmetric: None,
        closed_form_time: Some(std::f64::consts::PI / HYBRID_EFFECTIVE_FIELD),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{evolve, overlap};
    use crate::schemes::su2_coefficients;
    use std::f64::consts::PI;

    fn bits(s: &str) -> usize {
        // leftmost char is qubit 0
        s.chars()
            .enumerate()
            .filter(|(_, c)| *c == 'u')
            .fold(0, |acc, (q, _)| acc | 1 << q)
    }

    #[test]
    fn layouts() {
        assert_eq!(block_layout(4, 2).unwrap().sizes, vec![2, 2]);
        assert_eq!(block_layout(5, 2).unwrap().sizes, vec![3, 2]);
        assert_eq!(block_layout(10, 4).unwrap().sizes, vec![3, 3, 3, 1]);
        // r would be -1: balanced fallback
        assert_eq!(block_layout(5, 4).unwrap().sizes, vec![2, 1, 1, 1]);
        assert_eq!(block_layout(6, 4).unwrap().sizes, vec![2, 2, 1, 1]);
        for n in 1..=14 {
            for d in 1..=n {
                let l = block_layout(n, d).unwrap();
                assert_eq!(l.sizes.len(), d);
                assert_eq!(l.sizes.iter().sum::<usize>(), n);
                assert!(l.sizes.iter().all(|&s| s >= 1));
                assert_eq!(l.max_size(), n.div_ceil(d));
            }
        }
        assert!(block_layout(3, 4).is_err());
    }

    #[test]
    fn basis_examples() {
        assert_eq!(hybrid_basis(4, 2, 0).unwrap(), ComplexVector::basis(16, 0));
        let h = 0.5f64.sqrt();
        let v = hybrid_basis(4, 2, 1).unwrap();
        assert!((v[bits("uudd")].re - h).abs() < 1e-15);
        assert!((v[bits("dduu")].re - h).abs() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-15);
        let v = hybrid_basis(5, 2, 1).unwrap();
        assert!((v[bits("uuudd")].re - h).abs() < 1e-15);
        assert!((v[bits("ddduu")].re - h).abs() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!(matches!(hybrid_basis(15, 2, 0), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn evolved_examples() {
        assert_eq!(
            hybrid_evolved(4, 2, 0.0, 1.0, 0.0).unwrap(),
            ComplexVector::basis(16, 0)
        );
        let v = hybrid_evolved(4, 2, 0.0, 1.0, PI / 2.0).unwrap();
        let prod = v[0] * v[15];
        assert!((prod.norm() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn evolved_expands_over_block_basis() {
        for n in 1..=10 {
            for d in 1..=n {
                for &(theta, t) in &[(0.0, 0.9), (0.8, 2.3)] {
                    let psi = hybrid_evolved(n, d, theta, 1.0, t).unwrap();
                    let p = su2_coefficients(d, 1.0, theta, t);
                    for (j, pj) in p.iter().enumerate() {
                        let u = hybrid_basis(n, d, j).unwrap();
                        let c = overlap(&u, &psi).unwrap();
                        assert!((c - pj).norm() < 1e-10, "n={n} d={d} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn hamiltonian_examples() {
        let h = hybrid_hamiltonian(1, 1).unwrap();
        let want = ComplexMatrix::from_row_major(
            2,
            vec![C64::new(0.5, 0.0), ONE, ONE, C64::new(0.5, 0.0)],
        )
        .unwrap();
        assert_eq!(h, want);

        // X⊗X⊗I⊗I + I⊗I⊗X⊗X + 1 built from Pauli products
        let x = ComplexMatrix::tridiagonal(&[0.0, 0.0], &[1.0]);
        let id = ComplexMatrix::identity(2);
        let xx = x.kron(&x);
        let ii = id.kron(&id);
        let want = &(&xx.kron(&ii) + &ii.kron(&xx)) + &ComplexMatrix::identity(16);
        assert!(hybrid_hamiltonian(4, 2).unwrap().max_diff(&want) < 1e-15);
    }

    #[test]
    fn effective_field_from_matrix_elements() {
        // <u'_i|H'|u'_j> on the ladder equals 2 Jx + d/2
        for (n, d) in [(4, 2), (5, 2), (6, 3), (7, 3), (6, 4)] {
            let h = hybrid_hamiltonian(n, d).unwrap();
            let basis: Vec<_> = (0..=d).map(|j| hybrid_basis(n, d, j).unwrap()).collect();
            let g = su2_generators(d).unwrap();
            for i in 0..=d {
                // the ladder is invariant: H u'_i has no weight outside it
                let hu = h.apply(&basis[i]).unwrap();
                let inside: f64 = basis
                    .iter()
                    .map(|u| overlap(u, &hu).unwrap().norm_sqr())
                    .sum();
                assert!((inside - hu.norm().powi(2)).abs() < 1e-12);
                for j in 0..=d {
                    let el = h.matrix_element(&basis[i], &basis[j]).unwrap();
                    let mut want = g.jx[(i, j)] * HYBRID_EFFECTIVE_FIELD;
                    if i == j {
                        want += d as f64 / 2.0;
                    }
                    assert!((el - want).norm() < 1e-12, "n={n} d={d} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn matrix_exponential_matches_product_form() {
        for (n, d) in [(4, 2), (5, 2), (6, 3), (5, 5), (6, 1)] {
            let h = hybrid_hamiltonian(n, d).unwrap();
            for &t in &[0.3, PI / 4.0, 1.7] {
                let num = evolve(&h, &ComplexVector::basis(1 << n, 0), t).unwrap();
                let prod = hybrid_evolved(n, d, 0.0, HYBRID_EFFECTIVE_FIELD, t).unwrap();
                // d/2 offset is a global phase
                let phase = C64::from_polar(1.0, -(d as f64) * t / 2.0);
                assert!(num.max_diff(&prod.scale(phase)) < 1e-10, "n={n} d={d}");
            }
        }
    }
}

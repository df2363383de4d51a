//! Exact depth and separability of small pure register states.

use serde::Serialize;

use super::register_qubits;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::numerics::{ComplexVector, C64};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// Smallest achievable largest-block size.
    pub depth: usize,
    /// Largest achievable number of blocks.
    pub separability: usize,
    /// Blocks of a partition attaining `depth`, each listed by qubit index.
    pub witness: Vec<Vec<usize>>,
}

fn check_size(n: usize) -> Result<()> {
    let cap = Limits::DEFAULT.oracle_max_qubits;
    if n > cap {
        return Err(Error::TooLarge { qubits: n, cap });
    }
    Ok(())
}

/// Spreads the low bits of `value` over the set bits of `positions`.
fn deposit(value: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &p)| acc | ((value >> i & 1) << p))
}

/// `Tr(rho_S^2)` for the qubits in `mask`, via the Gram matrix of the
/// smaller side of the cut.
fn mask_purity(amps: &[C64], n: usize, mask: usize) -> f64 {
    let inside: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
    let outside: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 0).collect();
    let (rows, cols) = if inside.len() <= outside.len() {
        (inside, outside)
    } else {
        (outside, inside)
    };
    let col_index: Vec<usize> = (0..1usize << cols.len()).map(|c| deposit(c, &cols)).collect();
    let matrix: Vec<Vec<C64>> = (0..1usize << rows.len())
        .map(|r| {
            let base = deposit(r, &rows);
            col_index.iter().map(|&c| amps[base | c]).collect()
        })
        .collect();
    let mut purity = 0.0;
    for (a, ra) in matrix.iter().enumerate() {
        let diag: f64 = ra.iter().map(|z| z.norm_sqr()).sum();
        purity += diag * diag;
        for rb in &matrix[a + 1..] {
            let g: C64 = ra.iter().zip(rb).map(|(x, y)| x * y.conj()).sum();
            purity += 2.0 * g.norm_sqr();
        }
    }
    purity
}

/// Purity of the reduced state on `subset`.
pub fn reduced_purity(psi: &ComplexVector, subset: &[usize]) -> Result<f64> {
    let n = register_qubits(psi)?;
    check_size(n)?;
    let mut mask = 0usize;
    for &q in subset {
        if q >= n || mask >> q & 1 == 1 {
            return Err(Error::BadSubset(format!("qubit {q} is out of range or repeated")));
        }
        mask |= 1 << q;
    }
    if mask == 0 || mask == (1 << n) - 1 {
        return Err(Error::BadSubset("subset must be nonempty and proper".into()));
    }
    Ok(mask_purity(psi.amplitudes(), n, mask))
}

/// `table[mask]` is true when the qubits of `mask` are in a pure state
/// (purity >= 1 - tol). Entry 0 is false.
pub fn pure_subsets(psi: &ComplexVector, tol: f64) -> Result<Vec<bool>> {
    psi.check_state()?;
    let n = register_qubits(psi)?;
    check_size(n)?;
    let full = (1usize << n) - 1;
    let amps = psi.amplitudes();
    // a cut and its complement share their purity; evaluate the half with the top qubit outside
    let half = 1usize << (n - 1);
    let test = |mask: usize| mask == 0 || mask_purity(amps, n, mask) >= 1.0 - tol;
    #[cfg(feature = "parallel")]
    let lower: Vec<bool> = (0..half).into_par_iter().map(test).collect();
    #[cfg(not(feature = "parallel"))]
    let lower: Vec<bool> = (0..half).map(test).collect();

    let mut table = vec![false; full + 1];
    for (mask, &pure) in lower.iter().enumerate() {
        table[mask] = pure;
        table[full ^ mask] = pure;
    }
    table[0] = false;
    Ok(table)
}

/// Exact entanglement depth, separability number and a depth witness.
///
/// The witness is the lexicographically smallest sequence of block masks,
/// each block containing the lowest qubit not yet covered.
pub fn exact_depth(psi: &ComplexVector, tol: f64) -> Result<OracleResult> {
    let pure = pure_subsets(psi, tol)?;
    let n = register_qubits(psi)?;
    let full = (1usize << n) - 1;

    let mut depth = vec![usize::MAX; full + 1];
    let mut blocks = vec![0usize; full + 1];
    depth[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // submasks of `rest`, each joined with the lowest bit
        let mut sub = rest;
        loop {
            let block = sub | low;
            if pure[block] {
                let remaining = mask ^ block;
                let d = depth[remaining].max(block.count_ones() as usize);
                depth[mask] = depth[mask].min(d);
                blocks[mask] = blocks[mask].max(blocks[remaining] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let best = depth[full];

    let mut witness = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let block = (0..=rest)
            .filter(|s| s & !rest == 0)
            .map(|s| s | low)
            .find(|&b| pure[b] && b.count_ones() as usize <= best && depth[mask ^ b] <= best)
            .expect("a feasible block exists by construction");
        witness.push((0..n).filter(|q| block >> q & 1 == 1).collect());
        mask ^= block;
    }

    Ok(OracleResult {
        depth: best,
        separability: blocks[full],
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ONE, ZERO};
    use crate::schemes::product_state;
    use std::f64::consts::FRAC_1_SQRT_2;

    const TOL: f64 = 1e-9;

    fn ghz(n: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(1 << n);
        v[0] = C64::new(FRAC_1_SQRT_2, 0.0);
        v[(1 << n) - 1] = C64::new(FRAC_1_SQRT_2, 0.0);
        v
    }

    fn bell() -> ComplexVector {
        ghz(2)
    }

    #[test]
    fn purity_examples() {
        let prod = product_state(&[(ONE, ZERO), (C64::new(0.6, 0.0), C64::new(0.0, 0.8)), (ZERO, ONE)]);
        for s in [vec![0], vec![1], vec![0, 2]] {
            assert!((reduced_purity(&prod, &s).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!((reduced_purity(&bell(), &[0]).unwrap() - 0.5).abs() < 1e-15);
        assert!((reduced_purity(&ghz(3), &[0, 1]).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(reduced_purity(&ghz(3), &[]), Err(Error::BadSubset(_))));
        assert!(matches!(reduced_purity(&ghz(3), &[0, 1, 2]), Err(Error::BadSubset(_))));
        assert!(matches!(reduced_purity(&ghz(3), &[0, 0]), Err(Error::BadSubset(_))));
        assert!(matches!(reduced_purity(&ghz(3), &[3]), Err(Error::BadSubset(_))));
    }

    #[test]
    fn oracle_examples() {
        let r = exact_depth(&ComplexVector::basis(8, 0), TOL).unwrap();
        assert_eq!((r.depth, r.separability), (1, 3));
        assert_eq!(r.witness, vec![vec![0], vec![1], vec![2]]);

        // Bell pair on qubits 1,2 and qubit 0 down
        let bell_0 = bell().kron(&ComplexVector::basis(2, 0));
        let r = exact_depth(&bell_0, TOL).unwrap();
        assert_eq!((r.depth, r.separability), (2, 2));
        assert_eq!(r.witness, vec![vec![0], vec![1, 2]]);

        let w3 = ComplexVector::from_real(&[0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]).normalized();
        let r = exact_depth(&w3, TOL).unwrap();
        assert_eq!((r.depth, r.separability), (3, 1));

        let r = exact_depth(&ghz(4), TOL).unwrap();
        assert_eq!((r.depth, r.separability), (4, 1));
        assert_eq!(r.witness, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn rejects_large_registers() {
        let big = ComplexVector::basis(1 << 15, 0);
        assert!(matches!(exact_depth(&big, TOL), Err(Error::TooLarge { .. })));
    }
}

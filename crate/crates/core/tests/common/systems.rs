//! Random direct systems with known colimits.

use std::collections::BTreeMap;

use hft_core::limits::{DirectSystem, Poset};
use hft_core::zmod::{IntegerMatrix, Presentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random order on `0..n`: a random upper-triangular relation, closed
/// transitively, optionally with `n - 1` above everything.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, top: bool) -> Poset {
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
        for j in i + 1..n {
            leq[i][j] = rng.gen_bool(0.4) || (top && j == n - 1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    Poset::new(leq).unwrap()
}

/// Random unimodular matrix and its inverse.
pub fn unimodular(rng: &mut ChaCha8Rng, r: usize) -> (IntegerMatrix, IntegerMatrix) {
    let mut p = IntegerMatrix::identity(r);
    let mut q = IntegerMatrix::identity(r);
    if r < 2 {
        if rng.gen_bool(0.5) {
            p = p.neg();
            q = q.neg();
        }
        return (p, q);
    }
    for _ in 0..3 * r {
        let (a, b) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if a == b {
            continue;
        }
        let k: i64 = rng.gen_range(-2..=2);
        let mut e = IntegerMatrix::identity(r);
        e.set(a, b, k.into());
        let mut f = IntegerMatrix::identity(r);
        f.set(a, b, (-k).into());
        p = e.mul(&p);
        q = q.mul(&f);
    }
    (p, q)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let m: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntegerMatrix::from_rows(cols, &m)
}

pub fn columns(m: &IntegerMatrix, keep: &[usize]) -> IntegerMatrix {
    let mut out = IntegerMatrix::zeros(m.rows(), keep.len());
    for (a, &c) in keep.iter().enumerate() {
        for r in 0..m.rows() {
            out.set(r, a, m.get(r, c).clone());
        }
    }
    out
}

pub struct Fixture {
    pub sys: DirectSystem,
    pub coords: Vec<(IntegerMatrix, IntegerMatrix)>,
    pub lattice: IntegerMatrix,
    pub rank: usize,
}

/// Node `i` is `Z^r` modulo the columns of `L` born at nodes `≤ i`, written
/// in the coordinates `P_i`; transitions are `P_j P_i⁻¹`.
pub fn nested_system(seed: u64, n: usize, r: usize, top: bool) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poset = random_poset(&mut rng, n, top);
    let m = rng.gen_range(0..=r + 1);
    let lattice = random_matrix(&mut rng, r, m, 4);
    let born: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
    let coords: Vec<_> = (0..n).map(|_| unimodular(&mut rng, r)).collect();
    let groups = (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..m).filter(|&c| poset.le(born[c], i)).collect();
            Presentation::new(r, coords[i].0.mul(&columns(&lattice, &keep))).unwrap()
        })
        .collect();
    let mut maps = BTreeMap::new();
    for (i, j) in poset.strict_pairs() {
        maps.insert((i, j), coords[j].0.mul(&coords[i].1));
    }
    let sys = DirectSystem::new(poset, groups, maps).unwrap();
    Fixture {
        sys,
        coords,
        lattice,
        rank: r,
    }
}

/// Free subsystem `Z^a` mapped into each node by `P_i M`, with identity
/// transitions. Returns the subsystem, the inclusions and `M`.
pub fn free_subsystem(
    f: &Fixture,
    seed: u64,
    a: usize,
) -> (DirectSystem, Vec<IntegerMatrix>, IntegerMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_matrix(&mut rng, f.rank, a, 3);
    let incl = f.coords.iter().map(|(p, _)| p.mul(&m)).collect();
    let maps = f
        .sys
        .poset
        .strict_pairs()
        .into_iter()
        .map(|e| (e, IntegerMatrix::identity(a)))
        .collect();
    let n = f.sys.poset.len();
    let sub = DirectSystem::new(f.sys.poset.clone(), vec![Presentation::free(a); n], maps).unwrap();
    (sub, incl, m)
}

//! Brute-force references for the test suite.
//!
//! Nothing here calls into the library: matrices are plain row-major
//! vectors, Pauli strings are built by explicit Kronecker products, the
//! exponential is a scaled-and-squared Taylor series and eigenvalues come
//! from cyclic Jacobi sweeps.

#![allow(dead_code)]

use num_complex::Complex64 as C;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<C>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Dense {
            n,
            a: vec![C::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C) -> Self {
        Dense {
            n,
            a: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> C {
        self.a[r * self.n + c]
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let x = self.a[r * n + k];
                if x == C::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.a[r * n + c] += x * o.a[k * n + c];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Dense) -> Dense {
        Dense {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        Dense {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, s: C) -> Dense {
        Dense {
            n: self.n,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    pub fn adjoint(&self) -> Dense {
        Dense::from_fn(self.n, |r, c| self.at(c, r).conj())
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.at(r, c) * v[c]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn one_norm(&self) -> f64 {
        (0..self.n)
            .map(|c| (0..self.n).map(|r| self.at(r, c).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.sub(b).max_abs()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let n = a.n * b.n;
    Dense::from_fn(n, |r, c| a.at(r / b.n, c / b.n) * b.at(r % b.n, c % b.n))
}

pub fn pauli(p: char) -> Dense {
    let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    let a = match p {
        'I' => vec![l, o, o, l],
        'X' => vec![o, l, l, o],
        'Y' => vec![o, -i, i, o],
        'Z' => vec![l, o, o, -l],
        _ => panic!("unknown Pauli {p}"),
    };
    Dense { n: 2, a }
}

/// Kronecker chain with site 0 as the leftmost factor.
pub fn string(n_sites: usize, factors: &[(usize, char)]) -> Dense {
    let mut out = Dense::identity(1);
    for s in 0..n_sites {
        let p = factors
            .iter()
            .find(|(site, _)| *site == s)
            .map_or('I', |&(_, p)| p);
        out = kron(&out, &pauli(p));
    }
    out
}

/// `J Σ_bonds (XX + YY + Δ ZZ)` by explicit Kronecker products.
pub fn xxz(n_sites: usize, bonds: &[(usize, usize)], j: f64, delta: f64) -> Dense {
    let mut h = Dense::zeros(1 << n_sites);
    for &(a, b) in bonds {
        for (p, w) in [('X', j), ('Y', j), ('Z', j * delta)] {
            h = h.add(&string(n_sites, &[(a, p), (b, p)]).scale(C::new(w, 0.0)));
        }
    }
    h
}

/// `Σ_j c_j σ_j^p`.
pub fn field(coeffs: &[f64], p: char) -> Dense {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .fold(Dense::zeros(1 << n), |acc, (s, &c)| {
            acc.add(&string(n, &[(s, p)]).scale(C::new(c, 0.0)))
        })
}

/// Bonds of a rows × cols open square lattice (row-major), found by distance.
pub fn manhattan_bonds(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let n = rows * cols;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ra, ca) = ((a / cols) as i64, (a % cols) as i64);
            let (rb, cb) = ((b / cols) as i64, (b % cols) as i64);
            if (ra - rb).abs() + (ca - cb).abs() == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Permutation matrix of swapping the site pairs, by relabelling basis bits.
pub fn swap_permutation(n_sites: usize, pairs: &[(usize, usize)]) -> Dense {
    let dim = 1 << n_sites;
    let bit = |x: usize, s: usize| (x >> (n_sites - 1 - s)) & 1;
    let image = |x: usize| {
        let mut y = x;
        for &(a, b) in pairs {
            let (ba, bb) = (bit(x, a), bit(x, b));
            y &= !(1 << (n_sites - 1 - a));
            y &= !(1 << (n_sites - 1 - b));
            y |= bb << (n_sites - 1 - a);
            y |= ba << (n_sites - 1 - b);
        }
        y
    };
    let mut m = Dense::zeros(dim);
    for x in 0..dim {
        m.a[image(x) * dim + x] = C::new(1.0, 0.0);
    }
    m
}

/// `exp(−i H t)` by scaling, a 30-term Taylor series and squaring.
pub fn dense_expm_reference(h: &Dense, t: f64) -> Dense {
    let a = h.scale(C::new(0.0, -t));
    let norm = a.one_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let a = a.scale(C::new(0.5f64.powi(squarings as i32), 0.0));
    let mut term = Dense::identity(h.n);
    let mut sum = Dense::identity(h.n);
    for k in 1..=30 {
        term = term.mul(&a).scale(C::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// Excited-state population of a resonantly driven qubit in the rotating-wave limit.
///
/// The rotating-frame field is `(λ/2) σ`, so the Bloch vector turns at rate `λ`.
pub fn rabi_two_level(lambda: f64, _omega: f64, t: f64) -> f64 {
    (lambda * t / 2.0).sin().powi(2)
}

/// Eigenvalues (ascending) of a Hermitian matrix via Jacobi on its real embedding.
pub fn jacobi_eigenvalues(h: &Dense) -> Vec<f64> {
    let n = h.n;
    let m = 2 * n;
    // [[Re, −Im], [Im, Re]] has every eigenvalue of h twice
    let mut a = vec![0.0; m * m];
    for r in 0..n {
        for c in 0..n {
            let z = h.at(r, c);
            a[r * m + c] = z.re;
            a[(r + n) * m + c + n] = z.re;
            a[r * m + c + n] = -z.im;
            a[(r + n) * m + c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|r| (0..m).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r * m + c] * a[r * m + c])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k * m + p], a[k * m + q]);
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p * m + k], a[q * m + k]);
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..m).map(|k| a[k * m + k]).collect();
    ev.sort_by(f64::total_cmp);
    ev.into_iter().step_by(2).collect()
}

/// Orthonormal basis of the range of `p` by Gram-Schmidt over its columns.
fn range_basis(p: &Dense) -> Vec<Vec<C>> {
    let n = p.n;
    let mut basis: Vec<Vec<C>> = Vec::new();
    for c in 0..n {
        let mut v: Vec<C> = (0..n).map(|r| p.at(r, c)).collect();
        for _ in 0..2 {
            for b in &basis {
                let proj: C = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= bi * proj;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

fn compress(h: &Dense, basis: &[Vec<C>]) -> Dense {
    let images: Vec<Vec<C>> = basis.iter().map(|b| h.apply(b)).collect();
    Dense::from_fn(basis.len(), |r, c| {
        basis[r]
            .iter()
            .zip(&images[c])
            .map(|(x, y)| x.conj() * y)
            .sum()
    })
}

/// One eigenvalue of `H` tagged with the eigenvalue of `S` it belongs to.
#[derive(Clone, Copy, Debug)]
pub struct SectorLevel {
    pub energy: f64,
    pub sector: i8,
}

/// Spectrum of `H` resolved by the ±1 eigenspaces of the involution `S`.
///
/// Panics when `[S, H] ≠ 0`, when `S² ≠ 1`, or when the sector spectra do not
/// reassemble the full spectrum.
pub fn exhaustive_sector_check(h: &Dense, s: &Dense) -> Vec<SectorLevel> {
    let comm = s.mul(h).sub(&h.mul(s)).max_abs();
    assert!(comm < 1e-10, "operator does not commute: {comm:e}");
    assert!(
        max_diff(&s.mul(s), &Dense::identity(s.n)) < 1e-12,
        "not an involution"
    );
    let half = C::new(0.5, 0.0);
    let id = Dense::identity(h.n);
    let mut levels = Vec::new();
    for sector in [1i8, -1] {
        let proj = id.add(&s.scale(C::new(sector as f64, 0.0))).scale(half);
        let basis = range_basis(&proj);
        if basis.is_empty() {
            continue;
        }
        for e in jacobi_eigenvalues(&compress(h, &basis)) {
            levels.push(SectorLevel { energy: e, sector });
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let full = jacobi_eigenvalues(h);
    assert_eq!(full.len(), levels.len());
    for (a, b) in full.iter().zip(&levels) {
        assert!(
            (a - b.energy).abs() < 1e-8,
            "sector spectra disagree: {a} vs {}",
            b.energy
        );
    }
    levels
}

/// Converts a library matrix for comparison against the references.
pub fn from_nalgebra(m: &nalgebra::DMatrix<C>) -> Dense {
    Dense::from_fn(m.nrows(), |r, c| m[(r, c)])
}

/// Seeded random Hermitian matrix with entries of order one.
pub fn random_hermitian(n: usize, seed: u64) -> Dense {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a = (0..n * n)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let raw = Dense { n, a };
    raw.add(&raw.adjoint()).scale(C::new(0.5, 0.0))
}

/// Lowest eigenvalue in each sector of `S`, without the full-spectrum cross-check.
pub fn sector_minima(h: &Dense, s: &Dense) -> (f64, f64) {
    let id = Dense::identity(h.n);
    let lowest = |sign: f64| {
        let proj = id.add(&s.scale(C::new(sign, 0.0))).scale(C::new(0.5, 0.0));
        jacobi_eigenvalues(&compress(h, &range_basis(&proj)))[0]
    };
    (lowest(1.0), lowest(-1.0))
}

/// The row reflection of the 2×3 lattice.
pub const ROW_REFLECTION: [(usize, usize); 3] = [(0, 3), (1, 4), (2, 5)];

/// Library-against-oracle checks that every later suite relies on.
///
/// Panics on the first disagreement, so a suite calling this first cannot
/// report results computed by a broken core.
pub fn gate() {
    use spinlock_qa::dynamics::expm_hermitian;
    use spinlock_qa::hamiltonians::{xxz_hamiltonian, XxzParams};
    use spinlock_qa::operators::{hermiticity_residual, square_lattice, swap_product};

    let graph = square_lattice(2, 3).expect("2×3 lattice");
    let mut bonds = graph.bonds().to_vec();
    bonds.sort();
    assert_eq!(bonds, manhattan_bonds(2, 3), "gate: lattice bonds");

    let h = random_hermitian(8, 7);
    let lib = from_nalgebra(&expm_hermitian(&to_nalgebra(&h), 0.9).expect("expm"));
    let d = max_diff(&lib, &dense_expm_reference(&h, 0.9));
    assert!(d <= 1e-10, "gate: propagator kernel off by {d:e}");

    for (j, delta) in [(1.0, 0.7), (-1.0, 1.7)] {
        let op = xxz_hamiltonian(&XxzParams {
            j,
            delta,
            graph: graph.clone(),
        });
        let m = op.compile().expect("compile");
        assert!(
            hermiticity_residual(&m) <= 1e-12,
            "gate: XXZ builder not Hermitian"
        );
        let d = max_diff(&from_nalgebra(&m), &xxz(6, &bonds, j, delta));
        assert!(d <= 1e-12, "gate: XXZ builder off by {d:e}");
    }

    let s = from_nalgebra(
        &swap_product(&ROW_REFLECTION, 6)
            .expect("swap")
            .compile()
            .expect("compile"),
    );
    assert!(
        max_diff(&s, &swap_permutation(6, &ROW_REFLECTION)) <= 1e-12,
        "gate: swap product"
    );
    let levels = exhaustive_sector_check(&xxz(6, &bonds, 1.0, 0.7), &s);
    assert_eq!(levels[0].sector, -1, "gate: AF ground level sector");
}

pub fn to_nalgebra(m: &Dense) -> nalgebra::DMatrix<C> {
    nalgebra::DMatrix::from_fn(m.n, m.n, |r, c| m.at(r, c))
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{ExactField, Field};
use super::laurent::LaurentPoly;
use super::modular::{random_prime, ModField};
use super::scalar::Scalar;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// How a rank (or any other specialization-sensitive quantity) is computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankMode {
    Exact,
    /// Random evaluation points: `primes` primes in `[2^31, 2^32)` with
    /// `trials` values of `q` each.
    Modular { primes: usize, trials: usize, seed: u64 },
}

impl RankMode {
    pub fn modular_default(seed: u64) -> Self {
        RankMode::Modular { primes: 3, trials: 2, seed }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RankMode::Exact)
    }

    pub fn label(&self) -> &'static str {
        match self {
            RankMode::Exact => "exact",
            RankMode::Modular { .. } => "modular",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOutcome {
    pub rank: usize,
    /// False for modular results, which are only lower bounds.
    pub exact: bool,
    /// `(prime, qpoint)` pairs actually used.
    pub points: Vec<(u64, u64)>,
}

impl RankOutcome {
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.points.iter().map(|p| p.0).collect();
        ps.dedup();
        ps
    }
}

/// Something that can materialize a matrix over any [`Field`].
///
/// Large operators are built directly modulo `p` this way instead of being
/// built over Q(q) and specialized afterwards.
pub trait FieldBuild: Sync {
    fn build<F: Field>(&self, f: &F) -> Result<SparseMatrix<F::Elem>>;
}

impl FieldBuild for SparseMatrix<Scalar> {
    fn build<F: Field>(&self, f: &F) -> Result<SparseMatrix<F::Elem>> {
        self.try_map(f, |x| f.from_scalar(x))
    }
}

/// Rank of an exact matrix.
pub fn rank(m: &SparseMatrix<Scalar>, mode: &RankMode) -> Result<usize> {
    Ok(rank_detailed(m, mode)?.rank)
}

pub fn rank_detailed<B: FieldBuild>(b: &B, mode: &RankMode) -> Result<RankOutcome> {
    match mode {
        RankMode::Exact => {
            let m = b.build(&ExactField)?;
            Ok(RankOutcome { rank: rank_in_field(&ExactField, &m)?, exact: true, points: Vec::new() })
        }
        RankMode::Modular { primes, trials, seed } => {
            let runs = modular_trials(*primes, *trials, *seed, |f| {
                let m = b.build(f)?;
                rank_in_field(f, &m)
            })?;
            let rank = runs.iter().map(|r| r.1).max().unwrap_or(0);
            Ok(RankOutcome { rank, exact: false, points: runs.iter().map(|r| (r.0.p, r.0.q0)).collect() })
        }
    }
}

const MAX_POINT_ATTEMPTS: usize = 16;

/// Runs `job` at `primes * trials` random evaluation points in parallel.
///
/// A point whose denominators vanish is replaced by a fresh `q` value for the
/// same prime. Results are returned in a deterministic order for a given seed.
pub fn modular_trials<T, G>(primes: usize, trials: usize, seed: u64, job: G) -> Result<Vec<(ModField, T)>>
where
    T: Send,
    G: Fn(&ModField) -> Result<T> + Sync,
{
    if primes == 0 || trials == 0 {
        return Err(Error::InvalidArgument("modular mode needs at least one prime and one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::with_capacity(primes * trials);
    for _ in 0..primes {
        let p = random_prime(&mut rng);
        for _ in 0..trials {
            tasks.push((p, rng.gen::<u64>()));
        }
    }
    tasks
        .into_par_iter()
        .map(|(p, sub_seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
            for _ in 0..MAX_POINT_ATTEMPTS {
                let q0 = rng.gen_range(2..=p - 2);
                let f = ModField::new(p, q0)?;
                match job(&f) {
                    Err(Error::BadEvaluationPoint { .. }) | Err(Error::DivisionByZero) => continue,
                    Err(e) => return Err(e),
                    Ok(v) => return Ok((f, v)),
                }
            }
            Err(Error::AllPointsRejected { attempts: MAX_POINT_ATTEMPTS })
        })
        .collect()
}

/// Connected components of the bipartite row/column graph of `m`, as
/// `(rows, cols)` index lists. Rank is additive over them.
pub fn components<E: Clone>(m: &SparseMatrix<E>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let nr = m.nrows();
    let mut parent: Vec<usize> = (0..nr + m.ncols()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (r, c, _) in m.entries() {
        let a = find(&mut parent, r);
        let b = find(&mut parent, nr + c);
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for c in 0..m.ncols() {
        if m.col(c).is_empty() {
            continue;
        }
        let root = find(&mut parent, nr + c);
        groups.entry(root).or_default().1.push(c);
    }
    for r in 0..nr {
        let root = find(&mut parent, r);
        if let Some(g) = groups.get_mut(&root) {
            g.0.push(r);
        }
    }
    groups.into_values().collect()
}

/// Rank over the given field, block by block.
pub fn rank_in_field<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Result<usize> {
    let mut total = 0;
    for (rows, cols) in components(m) {
        let mut row_pos = vec![usize::MAX; m.nrows()];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let mut block = vec![vec![f.zero(); cols.len()]; rows.len()];
        for (j, &c) in cols.iter().enumerate() {
            for (r, v) in m.col(c) {
                block[row_pos[*r as usize]][j] = v.clone();
            }
        }
        total += f.block_rank(block)?;
    }
    Ok(total)
}

/// Exact rank by fraction-free elimination over Laurent polynomials.
///
/// Rows are cleared of denominators first. After each elimination step the
/// updated row is divided by the gcd of its entries, which keeps degrees at
/// the size of the true minors.
pub fn fraction_free_rank(rows: Vec<Vec<Scalar>>) -> usize {
    let mut m: Vec<Vec<LaurentPoly>> = rows.into_iter().map(clear_denominators).collect();
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    let ncols = m.first().map_or(0, |r| r.len());
    for row in m.iter_mut() {
        remove_content(row);
    }
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let pivot = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].term_count(), m[i][c].high_exp() - m[i][c].low_exp()));
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = prow[c].gcd(&row[c]);
            let a = prow[c].exact_div(&g).unwrap();
            let b = row[c].exact_div(&g).unwrap();
            for j in c..ncols {
                let lhs = if row[j].is_zero() { LaurentPoly::zero() } else { &a * &row[j] };
                let rhs = if prow[j].is_zero() { LaurentPoly::zero() } else { &b * &prow[j] };
                row[j] = &lhs - &rhs;
            }
            remove_content(row);
        }
        r += 1;
    }
    r
}

fn clear_denominators(row: Vec<Scalar>) -> Vec<LaurentPoly> {
    let mut l = LaurentPoly::one();
    for x in &row {
        if !x.is_laurent() {
            let g = l.gcd(x.den());
            l = &l * &x.den().exact_div(&g).unwrap();
        }
    }
    row.into_iter()
        .map(|x| if x.is_laurent() { x.num() * &l } else { x.num() * &l.exact_div(x.den()).unwrap() })
        .collect()
}

fn remove_content(row: &mut [LaurentPoly]) {
    let mut g: Option<LaurentPoly> = None;
    let mut low = i64::MAX;
    for x in row.iter().filter(|x| !x.is_zero()) {
        low = low.min(x.low_exp());
        let next = match &g {
            None => x.make_monic().shift(-x.low_exp()),
            Some(g0) => g0.gcd(x),
        };
        g = Some(next);
    }
    let Some(g) = g else { return };
    for x in row.iter_mut().filter(|x| !x.is_zero()) {
        let y = if g.is_one() { x.clone() } else { x.exact_div(&g).unwrap() };
        *x = y.shift(-low);
    }
}

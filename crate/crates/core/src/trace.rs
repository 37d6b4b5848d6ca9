//! The 0/1 trace system `B`: one row per `a·tr_G(b)·c`, one column per tuple
//! of `Gᵐ`, with exact rank, exact solving and identity checking.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{binomial2, intervals, GcmGraph, Vertex};
use crate::group::{Elem, GroupTable};

pub const DEFAULT_EXACT_CAP: usize = 2048;

/// `a·tr_G(b)·c` for the window `[k, l)`. `outside` lists the coordinates
/// `1..k−1` followed by `l..m`; `inside` is the block `k..l−1`, stored with
/// its first entry equal to `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceRow {
    pub k: usize,
    pub l: usize,
    pub outside: Vec<Elem>,
    pub inside: Vec<Elem>,
}

impl TraceRow {
    /// Build a row, canonicalizing the inside block by left multiplication.
    pub fn new(
        g: &GroupTable,
        m: usize,
        k: usize,
        l: usize,
        outside: Vec<Elem>,
        inside: Vec<Elem>,
    ) -> Result<Self> {
        if !(1 <= k && k < l && l <= m + 1) {
            return Err(Error::UnknownRow(format!("window [{k},{l}) for m = {m}")));
        }
        if inside.len() != l - k || outside.len() != m - (l - k) {
            return Err(Error::UnknownRow(format!(
                "window [{k},{l}) needs {} inside and {} outside entries, got {} and {}",
                l - k,
                m - (l - k),
                inside.len(),
                outside.len()
            )));
        }
        if let Some(&bad) = outside.iter().chain(&inside).find(|&&x| x >= g.order()) {
            return Err(Error::UnknownRow(format!(
                "element index {bad} out of range"
            )));
        }
        let shift = g.inv(inside[0]);
        let inside = inside.iter().map(|&x| g.mul(shift, x)).collect();
        Ok(TraceRow {
            k,
            l,
            outside,
            inside,
        })
    }

    /// The `|G|` tuples `(…, h·g_k, …, h·g_{l−1}, …)` this row sums.
    pub fn support(&self, g: &GroupTable, m: usize) -> Vec<Vec<Elem>> {
        (0..g.order())
            .map(|h| {
                let mut t = Vec::with_capacity(m);
                t.extend_from_slice(&self.outside[..self.k - 1]);
                t.extend(self.inside.iter().map(|&x| g.mul(h, x)));
                t.extend_from_slice(&self.outside[self.k - 1..]);
                debug_assert_eq!(t.len(), m);
                t
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TraceSystem {
    group: GroupTable,
    m: usize,
    columns: usize,
    rows: Vec<TraceRow>,
    /// sorted column indices of the ones in each row
    supports: Vec<Vec<usize>>,
    index: BTreeMap<TraceRow, usize>,
}

fn encode(n: usize, t: &[Elem]) -> usize {
    t.iter().rev().fold(0, |acc, &c| acc * n + c)
}

fn decode(n: usize, m: usize, mut v: usize) -> Vec<Elem> {
    (0..m)
        .map(|_| {
            let c = v % n;
            v /= n;
            c
        })
        .collect()
}

/// All rows for `(G, m)`, windows in lexicographic order.
pub fn build_trace_system(g: &GroupTable, m: usize, cap: usize) -> Result<TraceSystem> {
    let n = g.order();
    if m < 1 {
        return Err(Error::BadParameters("m must be positive".into()));
    }
    let columns = (0..m)
        .try_fold(1usize, |a, _| a.checked_mul(n))
        .filter(|&c| c <= cap)
        .ok_or(Error::TooLarge {
            what: "trace system columns",
            size: n.saturating_pow(m as u32),
            cap,
        })?;
    let mut rows = Vec::new();
    for (k, l) in intervals(m) {
        let width = l - k;
        let outside_count = n.pow((m - width) as u32);
        let inside_count = n.pow((width - 1) as u32);
        for o in 0..outside_count {
            let outside = decode(n, m - width, o);
            for i in 0..inside_count {
                let mut inside = vec![0];
                inside.extend(decode(n, width - 1, i));
                rows.push(TraceRow {
                    k,
                    l,
                    outside: outside.clone(),
                    inside,
                });
            }
        }
    }
    let supports = rows
        .iter()
        .map(|r| {
            let mut s: Vec<usize> = r.support(g, m).iter().map(|t| encode(n, t)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let index = rows
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();
    Ok(TraceSystem {
        group: g.clone(),
        m,
        columns,
        rows,
        supports,
        index,
    })
}

/// Result of [`TraceSystem::express_monomial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    /// `denominator · target = Σ coeff · row`, with integer coefficients.
    Feasible {
        denominator: BigInt,
        terms: Vec<(BigInt, usize)>,
    },
    Infeasible,
}

impl TraceSystem {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> &[TraceRow] {
        &self.rows
    }

    pub fn support(&self, row: usize) -> &[usize] {
        &self.supports[row]
    }

    pub fn row_index(&self, row: &TraceRow) -> Option<usize> {
        self.index.get(row).copied()
    }

    pub fn encode_tuple(&self, t: &[Elem]) -> usize {
        encode(self.group.order(), t)
    }

    pub fn decode_column(&self, c: usize) -> Vec<Elem> {
        decode(self.group.order(), self.m, c)
    }

    /// Number of ones in each column.
    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.columns];
        for s in &self.supports {
            for &c in s {
                w[c] += 1;
            }
        }
        w
    }

    /// Rank of `B` over ℚ, and the rows that formed the echelon basis.
    pub fn rank_with_basis(&self) -> (usize, Vec<usize>) {
        let mut ech = Echelon::new(self.columns);
        let mut basis = Vec::new();
        for (i, s) in self.supports.iter().enumerate() {
            let row: SparseRow = s.iter().map(|&c| (c, BigInt::one())).collect();
            if ech.insert(row) {
                basis.push(i);
                if basis.len() == self.columns {
                    break;
                }
            }
        }
        (basis.len(), basis)
    }

    pub fn rational_rank(&self) -> usize {
        self.rank_with_basis().0
    }

    /// Find rational `y` with `Σ yᵢ·Bᵢ = e_target`, or report that the target
    /// monomial lies outside the row space. The returned certificate is
    /// always checked by exact back-substitution.
    pub fn express_monomial(&self, target: &[Elem]) -> Result<Expression> {
        if target.len() != self.m || target.iter().any(|&x| x >= self.group.order()) {
            return Err(Error::DimensionMismatch(format!(
                "target tuple of length {}",
                target.len()
            )));
        }
        let t = self.encode_tuple(target);
        let (r, basis) = self.rank_with_basis();
        // Solve Bᵀ_S y = e_t: `columns` equations in `r` unknowns.
        let mut mat: Vec<Vec<BigRational>> = (0..self.columns)
            .map(|_| vec![BigRational::zero(); r + 1])
            .collect();
        for (j, &row) in basis.iter().enumerate() {
            for &c in &self.supports[row] {
                mat[c][j] = BigRational::one();
            }
        }
        mat[t][r] = BigRational::one();
        let Some(y) = solve_consistent(&mut mat, r) else {
            return Ok(Expression::Infeasible);
        };
        let denominator = y.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let terms: Vec<(BigInt, usize)> = y
            .iter()
            .zip(&basis)
            .filter(|(q, _)| !q.is_zero())
            .map(|(q, &row)| {
                (
                    (q * BigRational::from_integer(denominator.clone())).to_integer(),
                    row,
                )
            })
            .collect();
        // exact back-substitution
        let mut acc = vec![BigInt::zero(); self.columns];
        for (c, row) in &terms {
            for &col in &self.supports[*row] {
                acc[col] += c;
            }
        }
        let ok = acc.iter().enumerate().all(|(i, v)| {
            if i == t {
                *v == denominator
            } else {
                v.is_zero()
            }
        });
        if !ok {
            return Err(Error::ClaimViolated(
                "solution failed back-substitution".into(),
            ));
        }
        Ok(Expression::Feasible { denominator, terms })
    }

    /// Expand `Σ coeff·row` exactly and compare with `target_coeff·e_target`.
    pub fn verify_identity(
        &self,
        terms: &[(BigRational, TraceRow)],
        target_coeff: &BigRational,
        target: &[Elem],
    ) -> Result<bool> {
        if target.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "target tuple of length {}",
                target.len()
            )));
        }
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (c, row) in terms {
            let canon = TraceRow::new(
                &self.group,
                self.m,
                row.k,
                row.l,
                row.outside.clone(),
                row.inside.clone(),
            )?;
            let i = self
                .row_index(&canon)
                .ok_or_else(|| Error::UnknownRow(format!("{canon:?}")))?;
            for &col in &self.supports[i] {
                *acc.entry(col).or_insert_with(BigRational::zero) += c;
            }
        }
        let t = self.encode_tuple(target);
        *acc.entry(t).or_insert_with(BigRational::zero) -= target_coeff;
        Ok(acc.values().all(Zero::is_zero))
    }

    /// Exact check of `BᵀB = C(m+1,2)·I + A`.
    pub fn verify_btb_identity(&self, graph: &GcmGraph) -> Result<bool> {
        if graph.m() != self.m
            || graph.group() != &self.group
            || graph.vertex_count() != self.columns
        {
            return Err(Error::DimensionMismatch(
                "graph and trace system differ".into(),
            ));
        }
        let n = self.columns;
        let mut btb = vec![0u32; n * n];
        for s in &self.supports {
            for &a in s {
                for &b in s {
                    btb[a * n + b] += 1;
                }
            }
        }
        let c = binomial2(self.m + 1) as u32;
        for a in 0..n {
            for b in 0..n {
                let expect = if a == b {
                    c
                } else {
                    graph.adjacent(Vertex(a), Vertex(b)) as u32
                };
                if btb[a * n + b] != expect {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

type SparseRow = Vec<(usize, BigInt)>;

/// Incremental fraction-free row echelon form over ℤ. Each stored row is
/// primitive (content 1) with a distinct leading column.
struct Echelon {
    by_pivot: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn new(_columns: usize) -> Self {
        Echelon {
            by_pivot: BTreeMap::new(),
        }
    }

    /// Reduce `row` against the basis; keep it if it is independent.
    fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            let Some(piv) = self.by_pivot.get(&lead) else {
                break;
            };
            row = eliminate(&row, piv);
        }
        make_primitive(&mut row);
        if row[0].1.is_negative() {
            row.iter_mut().for_each(|(_, v)| *v = -core::mem::take(v));
        }
        self.by_pivot.insert(row[0].0, row);
        true
    }
}

/// `p·row − r·piv` where `p`, `r` are the leading coefficients, scaled down by their gcd.
fn eliminate(row: &SparseRow, piv: &SparseRow) -> SparseRow {
    let (a, b) = (&row[0].1, &piv[0].1);
    let g = a.gcd(b);
    let (fa, fb) = (b / &g, a / &g);
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, &row[i - 1].1 * &fa)
        } else if cj < ci {
            j += 1;
            (cj, -(&piv[j - 1].1 * &fb))
        } else {
            i += 1;
            j += 1;
            (ci, &row[i - 1].1 * &fa - &piv[j - 1].1 * &fb)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|(_, v)| *v /= &g);
    }
}

/// Gauss–Jordan on an augmented rational system with `unknowns` columns.
/// Returns a solution (free variables zero) or `None` if inconsistent.
fn solve_consistent(mat: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                let (head, tail) = if i < r {
                    let (a, b) = mat.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = mat.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if mat[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = mat[i][unknowns].clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::group::build_group;

    fn sys(spec: &str, m: usize) -> TraceSystem {
        build_trace_system(&build_group(spec).unwrap(), m, DEFAULT_EXACT_CAP).unwrap()
    }

    #[test]
    fn shapes() {
        let s = sys("C2", 2);
        assert_eq!((s.row_count(), s.column_count()), (6, 4));
        let s = sys("C3", 3);
        assert_eq!((s.row_count(), s.column_count()), (54, 27));
        assert!(s.column_weights().iter().all(|&w| w == 6));
        assert!((0..s.row_count()).all(|i| s.support(i).len() == 3));
    }

    #[test]
    fn ranks() {
        assert_eq!(sys("C2", 2).rational_rank(), 4);
        assert_eq!(sys("C3", 3).rational_rank(), 27);
        assert!(sys("C3", 2).rational_rank() < 9);
    }

    #[test]
    fn btb() {
        for (spec, m) in [("C2", 2), ("C3", 2), ("C3", 3), ("S3", 2)] {
            let s = sys(spec, m);
            let g = build_graph(s.group(), m).unwrap();
            assert!(s.verify_btb_identity(&g).unwrap(), "{spec} {m}");
        }
    }

    #[test]
    fn small_identity() {
        let s = sys("C2", 2);
        let g = s.group().clone();
        let q = |n: i64| BigRational::from_integer(n.into());
        // 2·ζe ζe = ζe·tr(ζe) + tr(ζe)·ζe − tr(ζe ζg)
        let terms = vec![
            (q(1), TraceRow::new(&g, 2, 2, 3, vec![0], vec![0]).unwrap()),
            (q(1), TraceRow::new(&g, 2, 1, 2, vec![0], vec![0]).unwrap()),
            (
                q(-1),
                TraceRow::new(&g, 2, 1, 3, vec![], vec![0, 1]).unwrap(),
            ),
        ];
        assert!(s.verify_identity(&terms, &q(2), &[0, 0]).unwrap());
        assert!(!s.verify_identity(&terms, &q(1), &[0, 0]).unwrap());
        assert!(s.verify_identity(&[], &q(0), &[0, 0]).unwrap());
        match s.express_monomial(&[0, 0]).unwrap() {
            Expression::Feasible { terms, .. } => assert!(!terms.is_empty()),
            Expression::Infeasible => panic!("full rank"),
        }
    }

    #[test]
    fn deficient_system_has_infeasible_target() {
        let s = sys("C3", 2);
        let infeasible = (0..9)
            .filter(|&c| s.express_monomial(&s.decode_column(c)).unwrap() == Expression::Infeasible)
            .count();
        assert!(infeasible > 0);
    }
}

//! Smith normal form over `Z/N` and linear congruence systems.
//!
//! `Z/N` is a principal ideal ring, so every matrix `A` factors as
//! `P·A·Q = D` with `P`, `Q` invertible and `D` diagonal. Only 2×2 Bezout
//! transforms of determinant 1 are used, so the inverses come for free.

pub fn md(a: i64, n: i64) -> i64 {
    a.rem_euclid(n)
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`, for `a, b >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `n` when it exists.
pub fn inv_mod(a: i64, n: i64) -> Option<i64> {
    let (g, s, _) = ext_gcd(md(a, n), n);
    (g == 1).then(|| md(s, n))
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub modulus: i64,
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal residues `d_0, ..., d_{rank-1}`.
    pub diag: Vec<i64>,
    /// Column transform; `x = Q·y`.
    pub q: Vec<Vec<i64>>,
    pub q_inv: Vec<Vec<i64>>,
    /// Inverse of the row transform, when requested.
    pub p_inv: Option<Vec<Vec<i64>>>,
    /// Right-hand sides after the row transform, `P·b`.
    pub rhs: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

struct Worker {
    n: i64,
    a: Vec<Vec<i64>>,
    rhs: Vec<Vec<i64>>,
    q: Vec<Vec<i64>>,
    q_inv: Vec<Vec<i64>>,
    p_inv: Option<Vec<Vec<i64>>>,
}

impl Worker {
    /// rows (t, i) ← [[s, u], [-b', a']]·rows with inverse columns [[a', -u], [b', s]].
    fn row_op(&mut self, t: usize, i: usize, s: i64, u: i64, bp: i64, ap: i64) {
        let n = self.n;
        let comb = |x: i64, y: i64| (md(s * x + u * y, n), md(-bp * x + ap * y, n));
        for c in 0..self.a[t].len() {
            let (x, y) = comb(self.a[t][c], self.a[i][c]);
            self.a[t][c] = x;
            self.a[i][c] = y;
        }
        for r in &mut self.rhs {
            let (x, y) = comb(r[t], r[i]);
            r[t] = x;
            r[i] = y;
        }
        if let Some(p) = &mut self.p_inv {
            for row in p.iter_mut() {
                let (x, y) = (row[t], row[i]);
                row[t] = md(ap * x + bp * y, n);
                row[i] = md(-u * x + s * y, n);
            }
        }
    }

    /// cols (t, j): new_t = s·t + u·j, new_j = -b'·t + a'·j.
    fn col_op(&mut self, t: usize, j: usize, s: i64, u: i64, bp: i64, ap: i64) {
        let n = self.n;
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            let (x, y) = (row[t], row[j]);
            row[t] = md(s * x + u * y, n);
            row[j] = md(-bp * x + ap * y, n);
        }
        for c in 0..self.q_inv[t].len() {
            let (x, y) = (self.q_inv[t][c], self.q_inv[j][c]);
            self.q_inv[t][c] = md(ap * x + bp * y, n);
            self.q_inv[j][c] = md(-u * x + s * y, n);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        for r in &mut self.rhs {
            r.swap(i, j);
        }
        if let Some(p) = &mut self.p_inv {
            for row in p.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }
}

/// Smith form of `a` (rows × cols) modulo `n`, carrying `rhs` vectors (each of length rows).
pub fn smith_mod(a: &[Vec<i64>], cols: usize, n: i64, rhs: &[Vec<i64>], track_p_inv: bool) -> SmithForm {
    assert!(n >= 1);
    let rows = a.len();
    let mut w = Worker {
        n,
        a: a.iter().map(|r| r.iter().map(|&v| md(v, n)).collect()).collect(),
        rhs: rhs.iter().map(|r| r.iter().map(|&v| md(v, n)).collect()).collect(),
        q: identity(cols),
        q_inv: identity(cols),
        p_inv: track_p_inv.then(|| identity(rows)),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: nonzero entry with the smallest gcd against n
        let mut best: Option<(i64, usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = w.a[r][c];
                if v != 0 {
                    let g = gcd(v, n);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, r, c));
                    }
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        w.swap_rows(t, r);
        w.swap_cols(t, c);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let b = w.a[i][t];
                if b == 0 {
                    continue;
                }
                let p = w.a[t][t];
                if b % p == 0 {
                    w.row_op(t, i, 1, 0, b / p, 1);
                } else {
                    let (g, s, u) = ext_gcd(p, b);
                    w.row_op(t, i, s, u, b / g, p / g);
                }
            }
            for j in t + 1..cols {
                let b = w.a[t][j];
                if b == 0 {
                    continue;
                }
                let p = w.a[t][t];
                if b % p == 0 {
                    w.col_op(t, j, 1, 0, b / p, 1);
                } else {
                    let (g, s, u) = ext_gcd(p, b);
                    w.col_op(t, j, s, u, b / g, p / g);
                    dirty = true;
                }
            }
            if !dirty || (t + 1..rows).all(|i| w.a[i][t] == 0) {
                break;
            }
        }
        diag.push(w.a[t][t]);
        t += 1;
    }
    SmithForm { modulus: n, rows, cols, diag, q: w.q, q_inv: w.q_inv, p_inv: w.p_inv, rhs: w.rhs }
}

/// Affine solution set `particular + span(generators)` of a congruence system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionLattice {
    pub modulus: i64,
    pub particular: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
    /// Additive order of each generator.
    pub orders: Vec<i64>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    fn apply_q(&self, y: &[i64]) -> Vec<i64> {
        let n = self.modulus;
        (0..self.cols).map(|r| md((0..self.cols).map(|c| self.q[r][c] * y[c]).sum(), n)).collect()
    }

    /// Kernel generators: `Q·(n/g_i)·e_i` for pivots, `Q·e_i` for free columns.
    pub fn kernel(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let n = self.modulus;
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for i in 0..self.cols {
            let (step, ord) = match self.diag.get(i) {
                Some(&d) => {
                    let g = gcd(d, n);
                    (n / g, g)
                }
                None => (1, n),
            };
            if ord <= 1 {
                continue;
            }
            let mut y = vec![0; self.cols];
            y[i] = step;
            gens.push(self.apply_q(&y));
            orders.push(ord);
        }
        (gens, orders)
    }

    /// Solves against the `k`-th carried right-hand side.
    pub fn solve(&self, k: usize) -> Option<SolutionLattice> {
        let n = self.modulus;
        let c = &self.rhs[k];
        if c[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut y = vec![0; self.cols];
        for (i, &d) in self.diag.iter().enumerate() {
            let g = gcd(d, n);
            if c[i] % g != 0 {
                return None;
            }
            let m = n / g;
            y[i] = if m == 1 { 0 } else { md((c[i] / g) * inv_mod(d / g, m).unwrap(), m) };
        }
        let (generators, orders) = self.kernel();
        Some(SolutionLattice { modulus: n, particular: self.apply_q(&y), generators, orders })
    }
}

/// Solution lattice of `A·x ≡ b (mod n)`.
pub fn solve_mod(a: &[Vec<i64>], cols: usize, b: &[i64], n: i64) -> Option<SolutionLattice> {
    smith_mod(a, cols, n, &[b.to_vec()], false).solve(0)
}

impl SolutionLattice {
    /// Every element of the homogeneous part, by closure under the generators.
    pub fn homogeneous_elements(&self, limit: usize) -> Option<Vec<Vec<i64>>> {
        let n = self.modulus;
        let zero = vec![0; self.particular.len()];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(zero.clone());
        let mut stack = vec![zero];
        while let Some(v) = stack.pop() {
            for gen in &self.generators {
                let w: Vec<i64> = v.iter().zip(gen).map(|(a, b)| md(a + b, n)).collect();
                if seen.insert(w.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    stack.push(w);
                }
            }
        }
        Some(seen.into_iter().collect())
    }

    /// Lexicographically least solution; `None` when the homogeneous part exceeds `limit`.
    pub fn lex_least(&self, limit: usize) -> Option<Vec<i64>> {
        let n = self.modulus;
        self.homogeneous_elements(limit)?
            .into_iter()
            .map(|h| self.particular.iter().zip(&h).map(|(a, b)| md(a + b, n)).collect::<Vec<_>>())
            .min()
    }
}

fn prime_powers(mut v: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v % p == 0 {
            let mut q = 1;
            while v % p == 0 {
                v /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if v > 1 {
        out.push((v, v));
    }
    out
}

/// Invariant factors `f_1 | f_2 | ...` (all > 1) of `⊕ Z/o_i`.
pub fn invariant_factors(orders: &[i64]) -> Vec<i64> {
    let mut by_prime: std::collections::BTreeMap<i64, Vec<i64>> = Default::default();
    for &o in orders {
        for (p, q) in prime_powers(o) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1i64; len];
    for qs in by_prime.values_mut() {
        qs.sort_unstable();
        let off = len - qs.len();
        for (k, q) in qs.iter().enumerate() {
            out[off + k] *= q;
        }
    }
    out
}

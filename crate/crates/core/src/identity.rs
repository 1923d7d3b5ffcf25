//! Polynomial H-identities: the free comodule algebra `T(X_H)`, the universal
//! map `μ_α: T(X_H) → S ⊗ A_{σ,a}(𝔾)`, the builtin polynomials `𝒫` and `𝒬`,
//! degree-bounded identity kernels and a randomized specialization falsifier.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{CycNumber, CycloField};
use crate::error::{Error, Result};
use crate::fingroup::GroupDatum;
use crate::galois::{galois_condition, GaloisAlgebra, GaloisSpec};
use crate::hopf::HopfAlgebra;
use crate::linalg::{ColumnSystem, Echelon, SparseVec};
use crate::monomial::{basis_text, format_terms, Algebra, MonomialAlgebra};
use crate::rational::Rational;

/// `X_var^b` (or `t_var^b`) with `b` a basis index of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XSym {
    pub var: u32,
    pub basis: usize,
}

/// Words compare by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<XSym>);

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Commutative product of two sorted t-monomials.
    fn merge_sorted(&self, s: XSym) -> Word {
        let mut v = self.0.clone();
        let pos = v.partition_point(|t| *t <= s);
        v.insert(pos, s);
        Word(v)
    }
}

/// An element of `T(X_H)`; `d` fixes how basis indices are labelled.
#[derive(Clone, Debug)]
pub struct FreePoly {
    field: Arc<CycloField>,
    d: usize,
    terms: BTreeMap<Word, CycNumber>,
}

impl PartialEq for FreePoly {
    fn eq(&self, other: &FreePoly) -> bool {
        self.terms == other.terms
    }
}

impl FreePoly {
    pub fn zero(field: &Arc<CycloField>, d: usize) -> FreePoly {
        FreePoly { field: Arc::clone(field), d, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<CycloField>, d: usize, c: CycNumber) -> FreePoly {
        FreePoly::zero(field, d).with_term(Word::default(), c)
    }

    pub fn symbol(field: &Arc<CycloField>, d: usize, var: u32, basis: usize) -> FreePoly {
        let one = CycNumber::root_in(field, 0);
        FreePoly::zero(field, d).with_term(Word(vec![XSym { var, basis }]), one)
    }

    /// `X_var^h` for an arbitrary element `h`, expanded linearly.
    pub fn symbol_of(field: &Arc<CycloField>, d: usize, var: u32, h: &SparseVec) -> FreePoly {
        let mut p = FreePoly::zero(field, d);
        for (b, c) in h.iter() {
            p.add_term(Word(vec![XSym { var, basis: *b }]), c.clone());
        }
        p
    }

    pub fn from_terms(field: &Arc<CycloField>, d: usize, terms: impl IntoIterator<Item = (Word, CycNumber)>) -> FreePoly {
        let mut p = FreePoly::zero(field, d);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn with_term(mut self, w: Word, c: CycNumber) -> FreePoly {
        self.add_term(w, c);
        self
    }

    fn add_term(&mut self, w: Word, c: CycNumber) {
        let v = match self.terms.remove(&w) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn powers(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&CycNumber> {
        self.terms.get(w)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> u32 {
        self.terms.keys().flat_map(|w| w.0.iter().map(|s| s.var)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> FreePoly {
        self.scale(&-CycNumber::root_in(&self.field, 0))
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycNumber) -> FreePoly {
        let mut p = FreePoly::zero(&self.field, self.d);
        for (w, v) in &self.terms {
            p.add_term(w.clone(), v * c);
        }
        p
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut p = FreePoly::zero(&self.field, self.d);
        for (w, c) in &self.terms {
            for (v, e) in &other.terms {
                p.add_term(w.concat(v), c * e);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> FreePoly {
        let mut p = FreePoly::constant(&self.field, self.d, CycNumber::root_in(&self.field, 0));
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    fn word_text(&self, w: &Word) -> String {
        w.0.iter().map(|s| format!("X[{};{}]", s.var, basis_text(s.basis, self.d))).collect::<Vec<_>>().join("*")
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter().map(|(w, c)| (c, self.word_text(w)))))
    }
}

/// An element of `S ⊗ A`: keys are (sorted t-monomial, basis index of `A`).
#[derive(Clone, Debug)]
pub struct SxAElement {
    field: Arc<CycloField>,
    /// Powers per element for t-labels (from `H`) and v-labels (from `A`).
    hd: usize,
    ad: usize,
    terms: BTreeMap<(Word, usize), CycNumber>,
}

impl PartialEq for SxAElement {
    fn eq(&self, other: &SxAElement) -> bool {
        self.terms == other.terms
    }
}

impl SxAElement {
    pub fn zero(field: &Arc<CycloField>, hd: usize, ad: usize) -> SxAElement {
        SxAElement { field: Arc::clone(field), hd, ad, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        field: &Arc<CycloField>,
        hd: usize,
        ad: usize,
        terms: impl IntoIterator<Item = ((Word, usize), CycNumber)>,
    ) -> SxAElement {
        let mut s = SxAElement::zero(field, hd, ad);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    fn add_term(&mut self, key: (Word, usize), c: CycNumber) {
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, usize), &CycNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Word, b: usize) -> CycNumber {
        self.terms.get(&(mono.clone(), b)).cloned().unwrap_or_else(|| CycNumber::zero_in(&self.field))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn key_text(&self, mono: &Word, b: usize) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < mono.0.len() {
            let s = mono.0[i];
            let mut k = 1;
            while i + k < mono.0.len() && mono.0[i + k] == s {
                k += 1;
            }
            let t = format!("t[{};{}]", s.var, basis_text(s.basis, self.hd));
            parts.push(if k == 1 { t } else { format!("{t}^{k}") });
            i += k;
        }
        parts.push(format!("v[{}]", basis_text(b, self.ad)));
        parts.join("*")
    }
}

impl fmt::Display for SxAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter().map(|((m, b), c)| (c, self.key_text(m, *b)))))
    }
}

/// `μ(X_i^b) = Σ t_i^{b₁} v_{b₂}` into `S ⊗ A` for a target algebra whose basis
/// contains that of `H` through `embed`.
pub struct MuMap<'a> {
    hopf: &'a HopfAlgebra,
    target: &'a dyn Algebra,
    embed: Vec<usize>,
    ad: usize,
}

impl<'a> MuMap<'a> {
    pub fn new(hopf: &'a HopfAlgebra, target: &'a dyn Algebra, embed: Vec<usize>, ad: usize) -> MuMap<'a> {
        MuMap { hopf, target, embed, ad }
    }

    pub fn galois(ga: &'a GaloisAlgebra) -> MuMap<'a> {
        let hopf: &HopfAlgebra = ga.hopf();
        MuMap { hopf, target: ga, embed: (0..ga.dim()).collect(), ad: hopf.algebra().d() }
    }

    fn field(&self) -> &Arc<CycloField> {
        self.target.field()
    }

    pub fn one(&self) -> SxAElement {
        let mut s = self.empty();
        for (b, c) in self.target.one().iter() {
            s.add_term((Word::default(), *b), c.clone());
        }
        s
    }

    fn empty(&self) -> SxAElement {
        SxAElement::zero(self.field(), self.hopf.algebra().d(), self.ad)
    }

    /// `x · μ(X_var^b)`.
    pub fn mul_symbol(&self, x: &SxAElement, s: XSym) -> SxAElement {
        let mut out = self.empty();
        for (b1, b2, c) in self.hopf.sweedler(s.basis) {
            let t = XSym { var: s.var, basis: b1 };
            let a = self.embed[b2];
            for ((mono, l), e) in &x.terms {
                let ce = c * e;
                let key = mono.merge_sorted(t);
                for (r, f) in self.target.mul_basis(*l, a).iter() {
                    out.add_term((key.clone(), *r), &ce * f);
                }
            }
        }
        out
    }

    pub fn word(&self, w: &Word) -> SxAElement {
        w.0.iter().fold(self.one(), |acc, s| self.mul_symbol(&acc, *s))
    }

    pub fn image(&self, p: &FreePoly) -> SxAElement {
        let mut out = self.empty();
        for (w, c) in p.terms() {
            for (k, v) in self.word(w).terms {
                out.add_term(k, c * &v);
            }
        }
        out
    }

    /// Product in `S ⊗ A`.
    pub fn mul(&self, x: &SxAElement, y: &SxAElement) -> SxAElement {
        let mut out = self.empty();
        for ((m1, a1), c) in &x.terms {
            for ((m2, a2), e) in &y.terms {
                let mut mono = m1.0.clone();
                mono.extend_from_slice(&m2.0);
                mono.sort();
                let ce = c * e;
                for (r, f) in self.target.mul_basis(*a1, *a2).iter() {
                    out.add_term((Word(mono.clone()), *r), &ce * f);
                }
            }
        }
        out
    }
}

fn require_galois(spec: &GaloisSpec) -> Result<()> {
    if galois_condition(spec) {
        Ok(())
    } else {
        Err(Error::NotGalois("the Galois condition fails for this specification".into()))
    }
}

pub fn mu_alpha(ga: &GaloisAlgebra, p: &FreePoly) -> Result<SxAElement> {
    require_galois(ga.spec())?;
    Ok(MuMap::galois(ga).image(p))
}

/// Whether `μ_α(P) = 0`, with the image as evidence.
pub fn is_identity(ga: &GaloisAlgebra, p: &FreePoly) -> Result<(bool, SxAElement)> {
    let img = mu_alpha(ga, p)?;
    Ok((img.is_zero(), img))
}

/// `E = X_e^1`, `X = X_e^g`, `Y = X_e^y` with the given variable index.
pub fn shorthand(datum: &GroupDatum, which: char, var: u32) -> FreePoly {
    let field = datum.field();
    let d = datum.d();
    let basis = match which {
        'E' => 0,
        'X' => datum.g() * d,
        'Y' => 1,
        _ => panic!("unknown shorthand {which}"),
    };
    FreePoly::symbol(&field, d, var, basis)
}

/// `Σ_{s ∈ S₃} sgn(s) E_{s(1)} X_{s(2)} Y^d_{s(3)}`, the subscript being the
/// position of the factor. With `multi_index` the three letters use the
/// variables 1, 2, 3 instead of all using variable 1.
pub fn builtin_p(datum: &GroupDatum, multi_index: bool) -> FreePoly {
    let (ve, vx, vy) = if multi_index { (1, 2, 3) } else { (1, 1, 1) };
    let e = shorthand(datum, 'E', ve);
    let x = shorthand(datum, 'X', vx);
    let yd = shorthand(datum, 'Y', vy).pow(datum.d() as u32);
    let letters = [e, x, yd];
    let field = datum.field();
    let mut p = FreePoly::zero(&field, datum.d());
    // positions of (E, X, Y^d) and the sign of the permutation
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([0, 2, 1], -1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 1, 0], -1)];
    for (pos, sign) in perms {
        let mut slots: [Option<&FreePoly>; 3] = [None; 3];
        for (letter, &at) in letters.iter().zip(pos.iter()) {
            slots[at] = Some(letter);
        }
        let term = slots.iter().fold(FreePoly::constant(&field, datum.d(), CycNumber::root_in(&field, 0)), |acc, s| {
            acc.mul(s.unwrap())
        });
        p = p.add(&term.scale(&CycNumber::from_int(field.conductor(), sign)));
    }
    p
}

/// `(YX − qXY)^d − (1−q)^d X^d (Y^d − μE^d)`; for `μ = 0` this is
/// `(YX − qXY)^d − (1−q)^d X^d Y^d`.
pub fn builtin_q(datum: &GroupDatum) -> FreePoly {
    let field = datum.field();
    let d = datum.d() as u32;
    let q = datum.q();
    let (e, x, y) = (shorthand(datum, 'E', 1), shorthand(datum, 'X', 1), shorthand(datum, 'Y', 1));
    let comm = y.mul(&x).sub(&x.mul(&y).scale(&q));
    let one = CycNumber::root_in(&field, 0);
    let c = (&one - &q).pow(d as u64);
    let tail = y.pow(d).sub(&e.pow(d).scale(datum.mu()));
    comm.pow(d).sub(&x.pow(d).mul(&tail).scale(&c))
}

/// The witness `−a(1−q)^d t₁^d t_g^d ⊗ v_g^d v_{g^d}` predicted for `μ_α(𝒬)`.
pub fn q_witness(ga: &GaloisAlgebra) -> SxAElement {
    let spec = ga.spec();
    let datum = spec.datum();
    let field = datum.field();
    let d = datum.d();
    let q = datum.q();
    let one = CycNumber::root_in(&field, 0);
    let c = -(&(&one - &q).pow(d as u64) * spec.a());
    let mut mono = vec![XSym { var: 1, basis: 0 }; d];
    mono.extend(vec![XSym { var: 1, basis: datum.g() * d }; d]);
    let vg = ga.u(datum.g(), 0);
    let mut prod = ga.one();
    for _ in 0..d {
        prod = ga.mul(&prod, &vg);
    }
    let prod = ga.mul(&prod, &ga.u(datum.gd(), 0));
    let terms = prod.iter().map(|(b, e)| ((Word(mono.clone()), *b), &c * e)).collect::<Vec<_>>();
    SxAElement::from_terms(&field, d, d, terms)
}

/// Coefficient of `t₁^{d+1} t_g ⊗ v_g v_y^d` in `μ(𝒫)` computed where `y^d` is
/// not yet reduced; it equals `1 − q^d`.
pub fn p_precancellation(spec: &GaloisSpec, multi_index: bool) -> CycNumber {
    let datum = spec.datum();
    let d = datum.d();
    let powers = d + 1;
    let hopf = HopfAlgebra::new(Arc::clone(datum));
    let free = MonomialAlgebra::with_powers(datum, Some(spec.sigma_values()), Vec::new(), powers);
    let embed: Vec<usize> = (0..hopf.dim()).map(|b| (b / d) * powers + b % d).collect();
    let mu = MuMap::new(&hopf, &free, embed, powers);
    let img = mu.image(&builtin_p(datum, multi_index));
    let (ve, vx, vy) = if multi_index { (1, 2, 3) } else { (1, 1, 1) };
    let mut mono = vec![XSym { var: ve, basis: 0 }, XSym { var: vx, basis: datum.g() * d }];
    mono.extend(vec![XSym { var: vy, basis: 0 }; d]);
    mono.sort();
    img.coefficient(&Word(mono), datum.g() * powers + d)
}

/// Words of length `≤ degree` over `vars` variables and the `H`-basis, in
/// canonical order.
#[derive(Clone, Debug)]
pub struct WordBasis {
    vars: u32,
    hdim: usize,
    degree: usize,
    offsets: Vec<usize>,
}

impl WordBasis {
    pub fn new(vars: u32, hdim: usize, degree: usize, budget: u64) -> Result<WordBasis> {
        let base = vars as u128 * hdim as u128;
        let mut total: u128 = 0;
        let mut level: u128 = 1;
        let mut offsets = Vec::new();
        for _ in 0..=degree {
            offsets.push(total as usize);
            total += level;
            if total > budget as u128 {
                let mut dim = total;
                let mut l = level;
                for _ in offsets.len()..=degree {
                    l = l.saturating_mul(base);
                    dim = dim.saturating_add(l);
                }
                return Err(Error::Budget { dimension: dim, budget });
            }
            level *= base;
        }
        offsets.push(total as usize);
        Ok(WordBasis { vars, hdim, degree, offsets })
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn base(&self) -> usize {
        self.vars as usize * self.hdim
    }

    fn symbol(&self, s: usize) -> XSym {
        XSym { var: (s / self.hdim) as u32 + 1, basis: s % self.hdim }
    }

    fn symbol_index(&self, s: XSym) -> Option<usize> {
        (s.var >= 1 && s.var <= self.vars && s.basis < self.hdim)
            .then(|| (s.var as usize - 1) * self.hdim + s.basis)
    }

    pub fn word(&self, idx: usize) -> Word {
        let k = self.offsets.partition_point(|&o| o <= idx) - 1;
        let mut r = idx - self.offsets[k];
        let mut syms = vec![XSym { var: 0, basis: 0 }; k];
        for slot in syms.iter_mut().rev() {
            *slot = self.symbol(r % self.base());
            r /= self.base();
        }
        Word(syms)
    }

    pub fn index(&self, w: &Word) -> Option<usize> {
        if w.len() > self.degree {
            return None;
        }
        let mut r = 0;
        for s in &w.0 {
            r = r * self.base() + self.symbol_index(*s)?;
        }
        Some(self.offsets[w.len()] + r)
    }

    pub fn vector(&self, p: &FreePoly) -> Option<SparseVec> {
        let mut items = Vec::new();
        for (w, c) in p.terms() {
            items.push((self.index(w)?, c.clone()));
        }
        Some(SparseVec::from_entries(items))
    }

    pub fn poly(&self, v: &SparseVec, field: &Arc<CycloField>, d: usize) -> FreePoly {
        FreePoly::from_terms(field, d, v.iter().map(|(i, c)| (self.word(*i), c.clone())))
    }
}

/// Canonical basis of `{P : deg P ≤ D, μ_α(P) = 0}` in `vars` variables.
#[derive(Clone, Debug)]
pub struct KernelSlice {
    pub words: WordBasis,
    pub basis: Vec<SparseVec>,
    field: Arc<CycloField>,
    d: usize,
}

impl KernelSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn polys(&self) -> Vec<FreePoly> {
        self.basis.iter().map(|v| self.words.poly(v, &self.field, self.d)).collect()
    }

    pub fn poly(&self, v: &SparseVec) -> FreePoly {
        self.words.poly(v, &self.field, self.d)
    }

    pub fn contains(&self, p: &FreePoly) -> bool {
        let Some(v) = self.words.vector(p) else { return false };
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(b.clone());
        }
        e.contains(&v)
    }
}

pub const DEFAULT_BUDGET: u64 = 200_000;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

pub fn kernel_at_degree(ga: &GaloisAlgebra, degree: usize, vars: u32, budget: u64) -> Result<KernelSlice> {
    if degree == 0 || vars == 0 {
        return Err(Error::Usage("degree and variable count must be at least 1".into()));
    }
    require_galois(ga.spec())?;
    let words = WordBasis::new(vars, ga.dim(), degree, budget)?;
    let mu = MuMap::galois(ga);
    let field = ga.field().clone();
    let base = words.base();
    // images level by level: a word of length k is (prefix of length k−1, last symbol)
    let mut images: Vec<SxAElement> = vec![mu.one()];
    let mut prev: Vec<SxAElement> = vec![mu.one()];
    for _ in 1..=degree {
        let mut level = Vec::with_capacity(prev.len() * base);
        for img in &prev {
            for s in 0..base {
                level.push(mu.mul_symbol(img, words.symbol(s)));
            }
        }
        images.extend(level.iter().cloned());
        prev = level;
    }
    // words sharing an image key lie in one block
    let mut uf = UnionFind((0..images.len()).collect());
    let mut owner: HashMap<&(Word, usize), usize> = HashMap::new();
    for (w, img) in images.iter().enumerate() {
        for (k, _) in img.terms() {
            match owner.get(k) {
                Some(&o) => uf.union(o, w),
                None => {
                    owner.insert(k, w);
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for w in 0..images.len() {
        let r = uf.find(w);
        blocks.entry(r).or_default().push(w);
    }
    let mut basis = Vec::new();
    for members in blocks.values() {
        let mut rows: HashMap<&(Word, usize), usize> = HashMap::new();
        let mut sys = ColumnSystem::new();
        for &w in members {
            let mut col = Vec::new();
            for (k, c) in images[w].terms() {
                let n = rows.len();
                let r = *rows.entry(k).or_insert(n);
                col.push((r, c.clone()));
            }
            sys.push(SparseVec::from_entries(col), &field);
        }
        for v in sys.kernel() {
            basis.push(v.map_indices(|j| members[j]));
        }
    }
    basis.sort_by_key(|v| v.leading().map(|(i, _)| *i));
    Ok(KernelSlice { words, basis, field, d: ga.hopf().algebra().d() })
}

/// Outcome of comparing two kernel slices.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelComparison {
    Equal,
    /// A polynomial in the kernel of the first spec (`in_first`) or the second, but not the other.
    Separating { poly: FreePoly, in_first: bool },
}

pub fn kernel_compare(
    a: &GaloisAlgebra,
    b: &GaloisAlgebra,
    degree: usize,
    vars: u32,
    budget: u64,
) -> Result<KernelComparison> {
    if a.spec().datum() != b.spec().datum() {
        return Err(Error::Usage("specifications have different group data".into()));
    }
    let ka = kernel_at_degree(a, degree, vars, budget)?;
    let kb = kernel_at_degree(b, degree, vars, budget)?;
    let span = |k: &KernelSlice| {
        let mut e = Echelon::new();
        for v in &k.basis {
            e.insert(v.clone());
        }
        e
    };
    let (ea, eb) = (span(&ka), span(&kb));
    if let Some(v) = ka.basis.iter().find(|v| !eb.contains(v)) {
        return Ok(KernelComparison::Separating { poly: ka.poly(v), in_first: true });
    }
    if let Some(v) = kb.basis.iter().find(|v| !ea.contains(v)) {
        return Ok(KernelComparison::Separating { poly: kb.poly(v), in_first: false });
    }
    Ok(KernelComparison::Equal)
}

fn is_grouplike_word(w: &Word, d: usize) -> bool {
    w.0.iter().all(|s| s.basis % d == 0)
}

/// The part of a kernel slice spanned by words whose labels are all grouplike.
pub fn graded_restrict(kernel: &KernelSlice) -> Vec<FreePoly> {
    let d = kernel.d;
    let n = kernel.words.len();
    let grouplike: Vec<bool> = (0..n).map(|i| is_grouplike_word(&kernel.words.word(i), d)).collect();
    // non-grouplike coordinates first, so pivots in the grouplike part mean
    // vectors supported on grouplike words only
    let mut order: Vec<usize> = (0..n).filter(|&i| !grouplike[i]).collect();
    let split = order.len();
    order.extend((0..n).filter(|&i| grouplike[i]));
    let mut rank_of = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank_of[i] = r;
    }
    let mut e = Echelon::new();
    for v in &kernel.basis {
        e.insert(v.map_indices(|i| rank_of[i]));
    }
    let restricted: Vec<SparseVec> = e
        .rref()
        .into_iter()
        .filter(|v| v.leading().is_some_and(|(i, _)| *i >= split))
        .map(|v| v.map_indices(|r| order[r]))
        .collect();
    crate::linalg::rref(restricted).iter().map(|v| kernel.poly(v)).collect()
}

/// Evaluates `(ξ⊗id)∘μ_α(P)` for random rational `ξ` on all t-symbols; `false`
/// as soon as one evaluation is nonzero.
pub fn specialize_oracle(ga: &GaloisAlgebra, p: &FreePoly, trials: u32, seed: u64) -> Result<bool> {
    require_galois(ga.spec())?;
    let hopf = ga.hopf();
    let dim = ga.dim();
    let field = ga.field().clone();
    let vars = p.max_var().max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(-9..=9);
        if n != 0 && d != 0 {
            return Rational::new(n, d);
        }
    };
    for _ in 0..trials {
        let xi: Vec<Vec<Rational>> = (0..vars).map(|_| (0..dim).map(|_| draw(&mut rng)).collect()).collect();
        // specialized symbols X_i^b ↦ Σ ξ(t_i^{b₁}) u_{b₂} ∈ A
        let sym = |s: &XSym| {
            let mut v = SparseVec::new();
            for (b1, b2, c) in hopf.sweedler(s.basis) {
                v.axpy(&c.scale(&xi[s.var as usize - 1][b1]), &SparseVec::unit(b2, &field));
            }
            v
        };
        let mut total = SparseVec::new();
        for (w, c) in p.terms() {
            let val = w.0.iter().fold(ga.one(), |acc, s| ga.mul(&acc, &sym(s)));
            total.axpy(c, &val);
        }
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{cyclic4_sign, klein, klein_cocycle, taft};

    fn ga(spec: GaloisSpec) -> GaloisAlgebra {
        GaloisAlgebra::new(&spec)
    }

    #[test]
    fn word_order() {
        let a = Word(vec![XSym { var: 2, basis: 0 }]);
        let b = Word(vec![XSym { var: 1, basis: 0 }, XSym { var: 1, basis: 0 }]);
        assert!(a < b);
        let wb = WordBasis::new(2, 4, 3, 1000).unwrap();
        for i in 0..wb.len() {
            assert_eq!(wb.index(&wb.word(i)), Some(i));
            if i > 0 {
                assert!(wb.word(i - 1) < wb.word(i));
            }
        }
    }

    #[test]
    fn mu_of_y() {
        let g = ga(GaloisSpec::trivial(taft(3), 0));
        let datum = taft(3);
        let y = shorthand(&datum, 'Y', 1);
        let img = mu_alpha(&g, &y).unwrap();
        // t₁ v_y + t_y v_g
        let one = CycNumber::one(9);
        let expect = SxAElement::from_terms(
            &datum.field(),
            3,
            3,
            [
                ((Word(vec![XSym { var: 1, basis: 0 }]), 1), one.clone()),
                ((Word(vec![XSym { var: 1, basis: 1 }]), 3), one),
            ],
        );
        assert_eq!(img, expect);
        assert_eq!(img.to_string(), "t[1;e0]*v[e0*y] + t[1;e0*y]*v[e1]");
    }

    #[test]
    fn p_and_q_on_small_cases() {
        for a in [0, 1] {
            let datum = cyclic4_sign(0);
            let g = ga(GaloisSpec::trivial(Arc::clone(&datum), a));
            assert!(is_identity(&g, &builtin_p(&datum, false)).unwrap().0);
            assert!(is_identity(&g, &builtin_p(&datum, true)).unwrap().0);
            let (ok, img) = is_identity(&g, &builtin_q(&datum)).unwrap();
            assert_eq!(ok, a == 0);
            assert_eq!(img, q_witness(&g));
        }
        assert_eq!(builtin_p(&taft(2), false).len(), 6);
        assert!(builtin_p(&taft(2), false).terms().all(|(w, _)| w.len() == 4));
    }

    #[test]
    fn precancellation_factor() {
        let spec = GaloisSpec::trivial(taft(3), 1);
        let f = p_precancellation(&spec, false);
        let q = taft(3).q();
        assert_eq!(f, &CycNumber::one(9) - &q.pow(3));
        assert!(f.is_zero());
    }

    #[test]
    fn grouplike_commutator_in_kernel() {
        let datum = taft(2);
        let g = ga(GaloisSpec::trivial(Arc::clone(&datum), 0));
        let k = kernel_at_degree(&g, 2, 2, DEFAULT_BUDGET).unwrap();
        let field = datum.field();
        let x1 = FreePoly::symbol(&field, 2, 1, 2);
        let x2 = FreePoly::symbol(&field, 2, 2, 2);
        assert!(k.contains(&x1.mul(&x2).sub(&x2.mul(&x1))));
        let k1 = kernel_at_degree(&g, 1, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(k1.dimension(), 0);
    }

    #[test]
    fn klein_graded_identities() {
        let datum = klein();
        let triv = ga(GaloisSpec::trivial(Arc::clone(&datum), 0));
        let tw = ga(GaloisSpec::new(Arc::clone(&datum), &klein_cocycle(), &CycNumber::zero(2)).unwrap());
        let field = datum.field();
        let d = datum.d();
        // the anticommuting pair (0,1), (1,0)
        let x1 = FreePoly::symbol(&field, d, 1, d);
        let x2 = FreePoly::symbol(&field, d, 2, 2 * d);
        let comm = x1.mul(&x2).sub(&x2.mul(&x1));
        let anti = x1.mul(&x2).add(&x2.mul(&x1));
        let kt = kernel_at_degree(&triv, 2, 2, DEFAULT_BUDGET).unwrap();
        let kw = kernel_at_degree(&tw, 2, 2, DEFAULT_BUDGET).unwrap();
        let gt = graded_restrict(&kt);
        let gw = graded_restrict(&kw);
        let span = |v: &[FreePoly], p: &FreePoly| {
            let wb = &kt.words;
            let mut e = Echelon::new();
            for q in v {
                e.insert(wb.vector(q).unwrap());
            }
            e.contains(&wb.vector(p).unwrap())
        };
        assert!(span(&gt, &comm) && !span(&gt, &anti));
        assert!(span(&gw, &anti) && !span(&gw, &comm));
        assert!(matches!(
            kernel_compare(&triv, &tw, 2, 2, DEFAULT_BUDGET).unwrap(),
            KernelComparison::Separating { .. }
        ));
        assert_eq!(kernel_compare(&triv, &triv, 2, 1, DEFAULT_BUDGET).unwrap(), KernelComparison::Equal);
    }

    #[test]
    fn budget_is_enforced() {
        let g = ga(GaloisSpec::trivial(taft(2), 0));
        match kernel_at_degree(&g, 3, 2, 100) {
            Err(Error::Budget { dimension, budget }) => {
                assert_eq!(budget, 100);
                assert_eq!(dimension, 1 + 8 + 64 + 512);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oracle_examples() {
        let datum = taft(2);
        let g = ga(GaloisSpec::trivial(Arc::clone(&datum), 1));
        assert!(specialize_oracle(&g, &builtin_p(&datum, false), 5, 7).unwrap());
        let x = shorthand(&datum, 'X', 1);
        assert!(!specialize_oracle(&g, &x, 1, 7).unwrap());
    }
}

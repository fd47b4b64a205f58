//! The FRT-presented quantized coordinate algebra on generators `u[i,j]`.
//!
//! Words are reduced against an oriented relation set (degree-lexicographic
//! order, generators row-major) until irreducible. The relation scalar is the
//! deformation variable `s` itself; `q = s^{n+1}` is only a display symbol.
//! Confluence of the oriented system is not proved here; it is certified
//! empirically by the test suite and independently by the pairing oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qscalar::{ScalarRat, ScalarRatJson};

#[derive(Debug, Error)]
pub enum NcError {
    #[error("term count exceeded the configured limit of {limit} (instance beyond desk scale)")]
    TermLimit { limit: usize },
    #[error("word {word} contains generators outside the sphere subalgebra (column weight not divisible by n)")]
    NotInSphere { word: String },
    #[error("generator index out of range for n = {n}: u[{row},{col}]")]
    BadIndex { n: u32, row: u8, col: u8 },
}

/// Matrix-coefficient generator `u[row, col]`, 1-based indices in `1..=n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen {
    pub row: u8,
    pub col: u8,
}

impl Gen {
    pub fn new(row: u8, col: u8) -> Self {
        Gen { row, col }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{},{}]", self.row, self.col)
    }
}

/// A word in the generators. Ordered degree-lexicographically, letters
/// compared row-major; this is the monomial order of the rewriting system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Formal finite sum of words with `ScalarRat` coefficients. The zero element
/// is the empty map; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    pub terms: BTreeMap<Word, ScalarRat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::scalar(ScalarRat::one())
    }

    pub fn scalar(c: ScalarRat) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(Word::empty(), c);
        p
    }

    pub fn gen(g: Gen) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(Word::single(g), ScalarRat::one());
        p
    }

    pub fn word(w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, ScalarRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: ScalarRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &ScalarRat) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    /// Greatest word under the monomial order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn render(&self, qstep: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let cs = c.render(qstep);
            let piece = if w.is_empty() {
                cs
            } else if c.is_one() {
                format!("{w}")
            } else if c.neg().is_one() {
                format!("-{w}")
            } else if cs.contains(' ') {
                format!("({cs}) * {w}")
            } else {
                format!("{cs} * {w}")
            };
            parts.push(piece);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(1))
    }
}

/// JSON form: list of terms sorted by the monomial order.
#[derive(Serialize, Deserialize)]
pub struct NCPolyJson(pub Vec<NCPolyTermJson>);

#[derive(Serialize, Deserialize)]
pub struct NCPolyTermJson {
    pub word: Vec<(u8, u8)>,
    pub coeff: ScalarRatJson,
}

impl From<&NCPoly> for NCPolyJson {
    fn from(p: &NCPoly) -> Self {
        NCPolyJson(
            p.terms
                .iter()
                .map(|(w, c)| NCPolyTermJson {
                    word: w.0.iter().map(|g| (g.row, g.col)).collect(),
                    coeff: ScalarRatJson::from(c),
                })
                .collect(),
        )
    }
}

/// One oriented relation: `lead` rewrites to `rest`, and `poly = lead - rest`
/// vanishes in the algebra. Every word of `rest` is strictly below `lead`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub lead: Word,
    pub rest: NCPoly,
}

impl Relation {
    /// The relation as an element that is zero in the algebra.
    pub fn as_zero_poly(&self) -> NCPoly {
        NCPoly::word(self.lead.clone()).sub(&self.rest)
    }
}

/// The oriented FRT presentation for a fixed n, plus the rewriting engine.
pub struct Presentation {
    pub n: u32,
    /// Quadratic rules keyed by the two-letter lead.
    rules2: HashMap<(Gen, Gen), NCPoly>,
    /// The determinant rule: lead word (length n+1) and its replacement.
    det_lead: Word,
    det_rest: NCPoly,
    /// All relations, for certification and the calculus solver.
    pub relations: Vec<Relation>,
    pub term_limit: usize,
    nf_cache: RwLock<HashMap<Word, NCPoly>>,
}

#[derive(Debug, Clone, Copy)]
enum Redex {
    Quad(usize),
    Det(usize),
}

/// Dimension of the matrix, n + 1.
fn dim(n: u32) -> u8 {
    (n + 1) as u8
}

impl Presentation {
    /// Build the relation set: same-row and same-column pairs exchange with
    /// scalar `s`, antidiagonal pairs commute, diagonal pairs exchange with the
    /// `(s - s^{-1})` correction, and the quantum determinant is set to 1.
    pub fn build(n: u32, term_limit: usize) -> Presentation {
        assert!(n >= 1);
        let d = dim(n);
        let s = ScalarRat::spow(1);
        let s_inv = ScalarRat::spow(-1);
        let mut rules2 = HashMap::new();
        let mut relations = Vec::new();

        let mut push2 = |name: String, lead: (Gen, Gen), rest: NCPoly| {
            debug_assert!(rest
                .leading_word()
                .map_or(true, |w| *w < Word(vec![lead.0, lead.1])));
            relations.push(Relation {
                name,
                lead: Word(vec![lead.0, lead.1]),
                rest: rest.clone(),
            });
            rules2.insert(lead, rest);
        };

        // Same row: u[k,i]u[k,j] = s u[k,j]u[k,i] for i < j.
        for k in 1..=d {
            for i in 1..=d {
                for j in (i + 1)..=d {
                    let a = Gen::new(k, i);
                    let b = Gen::new(k, j);
                    let rest = NCPoly::word(Word(vec![a, b])).scale(&s_inv);
                    push2(format!("row {k}: {b}{a}"), (b, a), rest);
                }
            }
        }
        // Same column: u[i,k]u[j,k] = s u[j,k]u[i,k] for i < j.
        for k in 1..=d {
            for i in 1..=d {
                for j in (i + 1)..=d {
                    let a = Gen::new(i, k);
                    let b = Gen::new(j, k);
                    let rest = NCPoly::word(Word(vec![a, b])).scale(&s_inv);
                    push2(format!("col {k}: {b}{a}"), (b, a), rest);
                }
            }
        }
        // Distinct rows i < j and columns k < l.
        for i in 1..=d {
            for j in (i + 1)..=d {
                for k in 1..=d {
                    for l in (k + 1)..=d {
                        let ik = Gen::new(i, k);
                        let il = Gen::new(i, l);
                        let jk = Gen::new(j, k);
                        let jl = Gen::new(j, l);
                        // Antidiagonal: u[i,l]u[j,k] = u[j,k]u[i,l].
                        push2(
                            format!("antidiag: {jk}{il}"),
                            (jk, il),
                            NCPoly::word(Word(vec![il, jk])),
                        );
                        // Diagonal: u[i,k]u[j,l] - u[j,l]u[i,k] = (s - s^-1) u[i,l]u[j,k].
                        let gap = s.sub(&s_inv);
                        let rest = NCPoly::word(Word(vec![ik, jl]))
                            .sub(&NCPoly::word(Word(vec![il, jk])).scale(&gap));
                        push2(format!("diag: {jl}{ik}"), (jl, ik), rest);
                    }
                }
            }
        }

        // Determinant relation det - 1 = 0, oriented to eliminate the greatest
        // word of det (the reverse permutation).
        let det = qdet_poly(n);
        let det_lead = det.leading_word().expect("det nonzero").clone();
        let lead_coeff = det.terms[&det_lead].clone();
        let mut det_rest = NCPoly::one();
        for (w, c) in &det.terms {
            if *w != det_lead {
                det_rest.add_term(w.clone(), c.neg());
            }
        }
        let det_rest = det_rest.scale(&lead_coeff.inverse().expect("unit lead"));
        relations.push(Relation {
            name: "det = 1".to_string(),
            lead: det_lead.clone(),
            rest: det_rest.clone(),
        });

        Presentation {
            n,
            rules2,
            det_lead,
            det_rest,
            relations,
            term_limit,
            nf_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn check_index(&self, g: Gen) -> Result<(), NcError> {
        let d = dim(self.n);
        if g.row < 1 || g.row > d || g.col < 1 || g.col > d {
            return Err(NcError::BadIndex {
                n: self.n,
                row: g.row,
                col: g.col,
            });
        }
        Ok(())
    }

    /// Locate the leftmost redex in `w`: either a quadratic lead at an adjacent
    /// pair or the determinant lead as a contiguous subword.
    fn find_redex(&self, w: &Word) -> Option<Redex> {
        let letters = &w.0;
        let dlen = self.det_lead.0.len();
        let mut i = 0;
        while i < letters.len() {
            if i + 1 < letters.len() && self.rules2.contains_key(&(letters[i], letters[i + 1])) {
                return Some(Redex::Quad(i));
            }
            if i + dlen <= letters.len() && letters[i..i + dlen] == self.det_lead.0[..] {
                return Some(Redex::Det(i));
            }
            i += 1;
        }
        None
    }

    fn replacement(&self, letters: &[Gen], redex: Redex) -> NCPoly {
        let (pos, len, body) = match redex {
            Redex::Quad(pos) => (
                pos,
                2,
                &self.rules2[&(letters[pos], letters[pos + 1])],
            ),
            Redex::Det(pos) => (pos, self.det_lead.0.len(), &self.det_rest),
        };
        let prefix = Word(letters[..pos].to_vec());
        let suffix = Word(letters[pos + len..].to_vec());
        let mut out = NCPoly::zero();
        for (w, c) in &body.terms {
            out.add_term(prefix.concat(w).concat(&suffix), c.clone());
        }
        out
    }

    /// Normal form of a single word, memoized. Rewrites the leftmost redex and
    /// recurses; every replacement word is strictly smaller in the monomial
    /// order, which is the termination witness.
    pub fn nf_word(&self, w: &Word) -> Result<NCPoly, NcError> {
        if let Some(hit) = self.nf_cache.read().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let result = match self.find_redex(w) {
            None => NCPoly::word(w.clone()),
            Some(redex) => {
                let repl = self.replacement(&w.0, redex);
                let mut acc = NCPoly::zero();
                for (w2, c2) in &repl.terms {
                    debug_assert!(w2 < w, "rewrite must decrease the monomial order");
                    let nf2 = self.nf_word(w2)?;
                    for (w3, c3) in &nf2.terms {
                        acc.add_term(w3.clone(), c2.mul(c3));
                    }
                    if acc.num_terms() > self.term_limit {
                        return Err(NcError::TermLimit {
                            limit: self.term_limit,
                        });
                    }
                }
                acc
            }
        };
        self.nf_cache
            .write()
            .unwrap()
            .insert(w.clone(), result.clone());
        Ok(result)
    }

    /// Normal form of a polynomial: rewriting is linear over the coefficient
    /// field, so reduce each word and sum.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let mut acc = NCPoly::zero();
        for (w, c) in &p.terms {
            let nf = self.nf_word(w)?;
            for (w2, c2) in &nf.terms {
                acc.add_term(w2.clone(), c.mul(c2));
            }
            if acc.num_terms() > self.term_limit {
                return Err(NcError::TermLimit {
                    limit: self.term_limit,
                });
            }
        }
        Ok(acc)
    }

    /// Product followed by reduction.
    pub fn nf_mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, NcError> {
        self.normal_form(&a.mul(b))
    }

    /// Rewrite trace for a single word: the sequence of redex-bearing words
    /// processed, in order. Used by tests as the termination witness.
    pub fn trace_word(&self, w: &Word) -> Vec<Word> {
        let mut trace = Vec::new();
        let mut stack = vec![w.clone()];
        while let Some(top) = stack.pop() {
            if let Some(redex) = self.find_redex(&top) {
                trace.push(top.clone());
                let repl = self.replacement(&top.0, redex);
                for w2 in repl.terms.keys() {
                    stack.push(w2.clone());
                }
            }
        }
        trace
    }
}

/// The quantum determinant: sum over permutations of `(-s)^{inv(sigma)}
/// u[1,sigma(1)] ... u[n+1,sigma(n+1)]`.
pub fn qdet_poly(n: u32) -> NCPoly {
    let d = dim(n) as usize;
    let mut out = NCPoly::zero();
    let mut perm: Vec<u8> = (1..=d as u8).collect();
    permute(&mut perm, 0, &mut |p| {
        let inv = inversions(p);
        let word = Word(
            p.iter()
                .enumerate()
                .map(|(i, &c)| Gen::new(i as u8 + 1, c))
                .collect(),
        );
        let coeff = ScalarRat::spow(inv as i64)
            .mul(&ScalarRat::from_int(if inv % 2 == 0 { 1 } else { -1 }));
        out.add_term(word, coeff);
    });
    out
}

fn permute(v: &mut Vec<u8>, k: usize, f: &mut impl FnMut(&[u8])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn inversions(p: &[u8]) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

/// Degree of an element with respect to the sphere grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    Inhomogeneous,
}

/// Z-grading degree via column weights: a letter in column 1 counts +1, any
/// other letter counts -1/n. Words whose off-column-1 letter count is not a
/// multiple of n cannot lie in the sphere subalgebra.
pub fn degree(n: u32, p: &NCPoly) -> Result<Degree, NcError> {
    let mut seen: Option<i64> = None;
    for w in p.terms.keys() {
        let col1 = w.0.iter().filter(|g| g.col == 1).count() as i64;
        let rest = w.0.len() as i64 - col1;
        if rest % n as i64 != 0 {
            return Err(NcError::NotInSphere {
                word: w.to_string(),
            });
        }
        let d = col1 - rest / n as i64;
        match seen {
            None => seen = Some(d),
            Some(prev) if prev != d => return Ok(Degree::Inhomogeneous),
            _ => {}
        }
    }
    Ok(Degree::Homogeneous(seen.unwrap_or(0)))
}

/// The sphere generator z_i = u[i,1].
pub fn z_gen(i: u8) -> Gen {
    Gen::new(i, 1)
}

/// Conjugate-linear anti-homomorphism: (u[i,j])* = S(u[j,i]), extended to
/// words by reversal. The caller supplies the antipode table on generators.
pub fn star(
    pres: &Presentation,
    antipode: &HashMap<Gen, NCPoly>,
    p: &NCPoly,
) -> Result<NCPoly, NcError> {
    let mut out = NCPoly::zero();
    for (w, c) in &p.terms {
        // Coefficients live in Q(s) with s real, so conjugation is identity.
        let mut acc = NCPoly::scalar(c.clone());
        for g in w.0.iter().rev() {
            let sg = &antipode[&Gen::new(g.col, g.row)];
            acc = pres.nf_mul(&acc, sg)?;
        }
        out = out.add(&acc);
    }
    pres.normal_form(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: u32) -> Presentation {
        Presentation::build(n, 2_000_000)
    }

    fn u(r: u8, c: u8) -> NCPoly {
        NCPoly::gen(Gen::new(r, c))
    }

    #[test]
    fn word_order_is_deglex() {
        let a = Word(vec![Gen::new(1, 1), Gen::new(1, 2)]);
        let b = Word(vec![Gen::new(1, 2), Gen::new(1, 1)]);
        let c = Word(vec![Gen::new(1, 1)]);
        assert!(c < a);
        assert!(a < b);
    }

    #[test]
    fn anchor_relation_normal_form() {
        // u[1,2]u[1,1] reduces to s^-1 u[1,1]u[1,2]; the exchange scalar is the
        // deformation parameter itself (q^{-1/(n+1)} in display units).
        for n in [1u32, 2] {
            let p = pres(n);
            let nf = p.nf_mul(&u(1, 2), &u(1, 1)).unwrap();
            let expect = u(1, 1).mul(&u(1, 2)).scale(&ScalarRat::spow(-1));
            assert_eq!(nf, expect, "n={n}");
        }
    }

    #[test]
    fn det_reduces_to_one() {
        for n in [1u32, 2, 3] {
            let p = pres(n);
            let det = qdet_poly(n);
            assert_eq!(p.normal_form(&det).unwrap(), NCPoly::one(), "n={n}");
        }
    }

    #[test]
    fn qdet_n1_shape() {
        // u[1,1]u[2,2] - s u[1,2]u[2,1]
        let det = qdet_poly(1);
        let expect = u(1, 1)
            .mul(&u(2, 2))
            .sub(&u(1, 2).mul(&u(2, 1)).scale(&ScalarRat::spow(1)));
        assert_eq!(det, expect);
    }

    #[test]
    fn nf_idempotent_on_corpus() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [1u32, 2] {
            let p = pres(n);
            let d = (n + 1) as u8;
            for _ in 0..60 {
                let len = rng.gen_range(0..=4);
                let w = Word(
                    (0..len)
                        .map(|_| Gen::new(rng.gen_range(1..=d), rng.gen_range(1..=d)))
                        .collect(),
                );
                let nf = p.nf_word(&w).unwrap();
                assert_eq!(p.normal_form(&nf).unwrap(), nf);
            }
        }
    }

    #[test]
    fn reduction_associativity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let n = 2u32;
        let p = pres(n);
        let d = (n + 1) as u8;
        let mut rand_word = |rng: &mut rand_chacha::ChaCha8Rng| {
            let len = rng.gen_range(1..=3);
            NCPoly::word(Word(
                (0..len)
                    .map(|_| Gen::new(rng.gen_range(1..=d), rng.gen_range(1..=d)))
                    .collect(),
            ))
        };
        for _ in 0..200 {
            let a = rand_word(&mut rng);
            let b = rand_word(&mut rng);
            let c = rand_word(&mut rng);
            let left = p.nf_mul(&p.nf_mul(&a, &b).unwrap(), &c).unwrap();
            let right = p.nf_mul(&a, &p.nf_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn degree_counts() {
        let n = 2u32;
        let z1 = u(1, 1);
        let z1_cubed = z1.mul(&z1).mul(&z1);
        assert_eq!(degree(n, &z1_cubed).unwrap(), Degree::Homogeneous(3));
        assert_eq!(degree(n, &NCPoly::one()).unwrap(), Degree::Homogeneous(0));
        // A single off-column-1 letter is not in the sphere subalgebra at n=2.
        assert!(degree(n, &u(1, 2)).is_err());
        // Mixed degrees.
        let mixed = z1.add(&NCPoly::one());
        assert_eq!(degree(n, &mixed).unwrap(), Degree::Inhomogeneous);
    }

    #[test]
    fn rewriting_preserves_degree() {
        // Relations are column-homogeneous, so the sphere grading is preserved.
        let n = 1u32;
        let p = pres(n);
        let zbar_ish = u(1, 2).mul(&u(2, 1)); // degree 0 at n = 1
        let nf = p.normal_form(&zbar_ish).unwrap();
        assert_eq!(degree(n, &nf).unwrap(), Degree::Homogeneous(0));
        let z1z1bar = u(1, 1).mul(&u(2, 2));
        let nf2 = p.normal_form(&z1z1bar).unwrap();
        assert_eq!(degree(n, &nf2).unwrap(), Degree::Homogeneous(0));
    }

    #[test]
    fn trace_strictly_decreases() {
        let p = pres(2);
        let w = Word(vec![
            Gen::new(3, 3),
            Gen::new(2, 2),
            Gen::new(1, 1),
            Gen::new(2, 1),
        ]);
        let trace = p.trace_word(&w);
        assert!(!trace.is_empty());
        for step in &trace {
            // every traced word is reducible and the rewrite strictly decreases
            let redex = p.find_redex(step).unwrap();
            let repl = p.replacement(&step.0, redex);
            for w2 in repl.terms.keys() {
                assert!(w2 < step);
            }
        }
    }

    #[test]
    fn term_limit_enforced() {
        let p = Presentation::build(2, 3);
        let big = qdet_poly(2);
        match p.normal_form(&big.mul(&big)) {
            Err(NcError::TermLimit { limit }) => assert_eq!(limit, 3),
            other => panic!("expected term limit error, got {other:?}"),
        }
    }
}

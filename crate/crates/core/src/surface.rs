//! Closed surfaces presented as a single polygon with paired edges.
//!
//! A [`GluingScheme`] is a cyclic word of signed letters; every letter
//! occurs exactly twice. [`normalize`] reduces any scheme to one of the
//! canonical words (sphere, connected sum of tori, connected sum of
//! projective planes) by explicit cut-and-paste moves, and
//! [`intersection_form`] reads the mod-2 intersection pairing off a
//! one-vertex word.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::f2::F2Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("malformed word: letter `{letter}` occurs {count} times (expected 2)")]
    MalformedWord { letter: String, count: usize },
    #[error("malformed word: {0}")]
    BadToken(String),
    #[error("empty word")]
    Empty,
    #[error("scheme has {vertices} vertices; normalize it to a one-vertex word first")]
    MultipleVertices { vertices: usize },
}

/// One signed occurrence of a letter in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub letter: usize,
    pub inverse: bool,
}

impl Sym {
    pub fn new(letter: usize, inverse: bool) -> Self {
        Self { letter, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            letter: self.letter,
            inverse: !self.inverse,
        }
    }
}

/// A closed connected surface as a cyclic edge-identification word.
///
/// Letter ids index into `names` and are numbered by first appearance.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GluingScheme {
    names: Vec<String>,
    word: Vec<Sym>,
}

impl GluingScheme {
    /// Parses whitespace-separated letters; a trailing `'` marks an inverse.
    pub fn parse(text: &str) -> Result<Self, SurfaceError> {
        let mut names: Vec<String> = Vec::new();
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut word = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.strip_suffix('\'') {
                Some(n) => (n, true),
                None => (token, false),
            };
            if name.is_empty() || name.contains('\'') {
                return Err(SurfaceError::BadToken(format!("bad letter `{token}`")));
            }
            if !name
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_' || c == '-')
            {
                return Err(SurfaceError::BadToken(format!("bad letter `{token}`")));
            }
            let id = *ids.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            });
            word.push(Sym::new(id, inverse));
        }
        Self::from_parts(names, word)
    }

    /// Builds a scheme from letter names and a word over their indices.
    pub fn from_parts(names: Vec<String>, word: Vec<Sym>) -> Result<Self, SurfaceError> {
        if word.is_empty() {
            return Err(SurfaceError::Empty);
        }
        let mut counts = vec![0usize; names.len()];
        for s in &word {
            if s.letter >= names.len() {
                return Err(SurfaceError::BadToken(format!("letter id {} has no name", s.letter)));
            }
            counts[s.letter] += 1;
        }
        if let Some((i, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(SurfaceError::MalformedWord {
                letter: names[i].clone(),
                count,
            });
        }
        // renumber by first appearance so that ids are canonical
        let mut remap = vec![usize::MAX; names.len()];
        let mut new_names = Vec::with_capacity(names.len());
        for s in &word {
            if remap[s.letter] == usize::MAX {
                remap[s.letter] = new_names.len();
                new_names.push(names[s.letter].clone());
            }
        }
        let word = word
            .into_iter()
            .map(|s| Sym::new(remap[s.letter], s.inverse))
            .collect();
        Ok(Self {
            names: new_names,
            word,
        })
    }

    /// Builds a scheme from an anonymous word, naming letters `a`, `b`, ….
    fn from_anonymous(word: &[Sym]) -> Self {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(word.len());
        for s in word {
            let next = remap.len();
            let id = *remap.entry(s.letter).or_insert(next);
            out.push(Sym::new(id, s.inverse));
        }
        let names = (0..remap.len()).map(letter_name).collect();
        Self::from_parts(names, out).expect("anonymous word is well formed")
    }

    pub fn sphere() -> Self {
        Self::parse("a a'").unwrap()
    }

    /// `a₁ b₁ a₁⁻¹ b₁⁻¹ ⋯ a_g b_g a_g⁻¹ b_g⁻¹`; genus 0 gives the sphere.
    pub fn orientable(genus: usize) -> Self {
        if genus == 0 {
            return Self::sphere();
        }
        let word: Vec<Sym> = (0..genus)
            .flat_map(|i| {
                let (a, b) = (2 * i, 2 * i + 1);
                [
                    Sym::new(a, false),
                    Sym::new(b, false),
                    Sym::new(a, true),
                    Sym::new(b, true),
                ]
            })
            .collect();
        Self::from_anonymous(&word)
    }

    /// `a₁ a₁ ⋯ a_k a_k` for `k ≥ 1` crosscaps.
    pub fn nonorientable(crosscaps: usize) -> Self {
        assert!(crosscaps >= 1, "need at least one crosscap");
        let word: Vec<Sym> = (0..crosscaps)
            .flat_map(|i| [Sym::new(i, false), Sym::new(i, false)])
            .collect();
        Self::from_anonymous(&word)
    }

    pub fn word(&self) -> &[Sym] {
        &self.word
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter_count(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for GluingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.names[s.letter], if s.inverse { "'" } else { "" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GluingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GluingScheme({self})")
    }
}

fn letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceInfo {
    pub euler_char: i64,
    pub orientable: bool,
    pub betti1_mod2: usize,
    pub vertex_count: usize,
}

/// Union-find over polygon corners. Corner `k` sits just before letter `k`.
fn corner_classes(word: &[Sym]) -> Vec<usize> {
    let n = word.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let ends = |p: usize| {
        if word[p].inverse {
            ((p + 1) % n, p)
        } else {
            (p, (p + 1) % n)
        }
    };
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for p in 0..n {
        if let Some(&q) = first.get(&word[p].letter) {
            let (s1, e1) = ends(q);
            let (s2, e2) = ends(p);
            for (x, y) in [(s1, s2), (e1, e2)] {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        } else {
            first.insert(word[p].letter, p);
        }
    }
    (0..n).map(|k| find(&mut parent, k)).collect()
}

fn vertex_count(word: &[Sym]) -> usize {
    let mut roots = corner_classes(word);
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

fn is_orientable(word: &[Sym]) -> bool {
    let mut seen: BTreeMap<usize, bool> = BTreeMap::new();
    word.iter().all(|s| match seen.insert(s.letter, s.inverse) {
        Some(prev) => prev != s.inverse,
        None => true,
    })
}

/// Euler characteristic, orientability and mod-2 first Betti number.
pub fn analyze(s: &GluingScheme) -> SurfaceInfo {
    let vertex_count = vertex_count(&s.word);
    let euler_char = vertex_count as i64 - s.letter_count() as i64 + 1;
    SurfaceInfo {
        euler_char,
        orientable: is_orientable(&s.word),
        betti1_mod2: (2 - euler_char) as usize,
        vertex_count,
    }
}

// ---------------------------------------------------------------------------
// word surgery

fn invert(w: &[Sym]) -> Vec<Sym> {
    w.iter().rev().map(|s| s.inv()).collect()
}

fn rotate(w: &[Sym], k: usize) -> Vec<Sym> {
    let k = k % w.len();
    w[k..].iter().chain(&w[..k]).copied().collect()
}

fn cyclic_slice(w: &[Sym], from: usize, to: usize) -> Vec<Sym> {
    let n = w.len();
    let len = (to + n - from) % n;
    (0..len).map(|t| w[(from + t) % n]).collect()
}

fn flip_letter(w: &mut [Sym], letter: usize) {
    for s in w.iter_mut().filter(|s| s.letter == letter) {
        s.inverse = !s.inverse;
    }
}

fn positions(w: &[Sym], letter: usize) -> (usize, usize) {
    let mut it = w.iter().enumerate().filter(|(_, s)| s.letter == letter);
    let a = it.next().expect("letter present").0;
    let b = it.next().expect("letter occurs twice").0;
    (a, b)
}

/// Cuts the polygon along a diagonal from corner `i` to corner `j` and
/// reglues the two pieces along `letter`, which must occur once on each
/// side. The diagonal becomes the letter `fresh`, placed first in the
/// returned word.
fn cut_glue(w: &[Sym], i: usize, j: usize, letter: usize, fresh: usize) -> Vec<Sym> {
    let s1 = cyclic_slice(w, i, j);
    let s2 = cyclic_slice(w, j, i);
    let p = s1
        .iter()
        .position(|s| s.letter == letter)
        .expect("glue letter on the cut-off side");
    debug_assert_eq!(s1.iter().filter(|s| s.letter == letter).count(), 1);
    let (left, right) = (&s1[..p], &s1[p + 1..]);
    let e = Sym::new(fresh, false);
    // the cut-off piece reads s1 · e⁻¹, which solves for the glue letter
    let expr: Vec<Sym> = if s1[p].inverse {
        right.iter().copied().chain([e.inv()]).chain(left.iter().copied()).collect()
    } else {
        invert(left).into_iter().chain([e]).chain(invert(right)).collect()
    };
    let expr_inv = invert(&expr);
    let mut out = vec![e];
    for s in s2 {
        if s.letter == letter {
            out.extend_from_slice(if s.inverse { &expr_inv } else { &expr });
        } else {
            out.push(s);
        }
    }
    out
}

struct Reducer {
    word: Vec<Sym>,
    next: usize,
}

impl Reducer {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// Removes cyclically adjacent `x x⁻¹` pairs while the word is longer
    /// than two letters.
    fn cancel(&mut self) {
        'outer: while self.word.len() > 2 {
            let n = self.word.len();
            for k in 0..n {
                let (a, b) = (self.word[k], self.word[(k + 1) % n]);
                if a.letter == b.letter && a.inverse != b.inverse {
                    if k + 1 == n {
                        self.word.remove(n - 1);
                        self.word.remove(0);
                    } else {
                        self.word.drain(k..k + 2);
                    }
                    continue 'outer;
                }
            }
            break;
        }
    }

    /// Cut-and-paste until every corner is the same vertex.
    fn reduce_vertices(&mut self) {
        loop {
            self.cancel();
            if self.word.len() <= 2 {
                return;
            }
            let classes = corner_classes(&self.word);
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &c in &classes {
                *counts.entry(c).or_default() += 1;
            }
            if counts.len() == 1 {
                return;
            }
            // shrink the smallest class one corner at a time
            let (&target, _) = counts
                .iter()
                .min_by_key(|(&c, &count)| (count, c))
                .expect("nonempty");
            let n = self.word.len();
            let k = (0..n)
                .find(|&k| classes[k] == target && classes[(k + n - 1) % n] != target)
                .expect("a class boundary exists");
            let y = self.word[k].letter;
            let fresh = self.fresh();
            self.word = cut_glue(&self.word, (k + n - 1) % n, (k + 1) % n, y, fresh);
        }
    }

    /// Letters already sitting in a contiguous `x x` or `x y x⁻¹ y⁻¹` block.
    fn done_letters(&self) -> Vec<bool> {
        let w = &self.word;
        let n = w.len();
        let mut done = vec![false; self.next];
        for p in 0..n {
            let (a, b) = (w[p], w[(p + 1) % n]);
            if a == b {
                done[a.letter] = true;
            } else if n >= 4 {
                let (c, d) = (w[(p + 2) % n], w[(p + 3) % n]);
                if a.letter != b.letter && c == a.inv() && d == b.inv() {
                    done[a.letter] = true;
                    done[b.letter] = true;
                }
            }
        }
        done
    }

    /// `a X a Y → e e X⁻¹ Y`.
    fn crosscap_move(&mut self, letter: usize) {
        let (i, j) = positions(&self.word, letter);
        let fresh = self.fresh();
        self.word = cut_glue(&self.word, i, j, letter, fresh);
    }

    /// `a X b Y a⁻¹ Z b⁻¹ W → f⁻¹ g⁻¹ f g Y X W Z` in three cuts.
    fn handle_move(&mut self, a: usize, done: &[bool]) {
        let (i, _) = positions(&self.word, a);
        let mut w = rotate(&self.word, i);
        if w[0].inverse {
            flip_letter(&mut w, a);
        }
        let (_, q) = positions(&w, a);
        let b = (1..q)
            .map(|p| w[p].letter)
            .find(|&l| {
                !done[l] && {
                    let (x, y) = positions(&w, l);
                    (x < q) != (y < q)
                }
            })
            .expect("a one-vertex word links every handle letter");
        let (pb, _) = positions(&w, b);
        if w[pb].inverse {
            flip_letter(&mut w, b);
        }

        let e = self.fresh();
        let w1 = cut_glue(&w, 0, pb + 1, a, e);
        // w1 = e U b e⁻¹ V b⁻¹ W
        let (_, r) = positions(&w1, e);
        debug_assert_eq!(w1[r - 1], Sym::new(b, false));
        let f = self.fresh();
        let w2 = cut_glue(&w1, 1, r, b, f);
        // w2 = f e⁻¹ V f⁻¹ U W e
        let last = w2.len() - 1;
        debug_assert_eq!(w2[last], Sym::new(e, false));
        let w3 = rotate(&w2, last);
        let (_, s) = positions(&w3, f);
        let g = self.fresh();
        self.word = cut_glue(&w3, 1, (s + 1) % w3.len(), e, g);
    }

    fn gather(&mut self) {
        loop {
            let done = self.done_letters();
            let pending: Vec<usize> = {
                let mut seen = vec![false; self.next];
                self.word
                    .iter()
                    .filter(|s| !done[s.letter] && !std::mem::replace(&mut seen[s.letter], true))
                    .map(|s| s.letter)
                    .collect()
            };
            if pending.is_empty() {
                return;
            }
            let same_sign = pending.iter().copied().find(|&l| {
                let (x, y) = positions(&self.word, l);
                self.word[x].inverse == self.word[y].inverse
            });
            match same_sign {
                Some(l) => self.crosscap_move(l),
                None => self.handle_move(pending[0], &done),
            }
        }
    }

    /// Splits a fully gathered word into blocks, trying each rotation.
    fn blocks(&self) -> Option<(usize, Vec<Block>)> {
        let w = &self.word;
        let n = w.len();
        'start: for start in 0..n {
            let mut out = Vec::new();
            let mut p = 0;
            while p < n {
                let at = |t: usize| w[(start + p + t) % n];
                if p + 2 <= n && at(0) == at(1) {
                    out.push(Block::Crosscap);
                    p += 2;
                } else if p + 4 <= n
                    && at(0).letter != at(1).letter
                    && at(2) == at(0).inv()
                    && at(3) == at(1).inv()
                {
                    out.push(Block::Handle);
                    p += 4;
                } else {
                    continue 'start;
                }
            }
            return Some((start, out));
        }
        None
    }

    /// `c c a b a⁻¹ b⁻¹ T`: one cut that turns the handle into same-sign
    /// pairs; [`Reducer::gather`] finishes the conversion to crosscaps.
    fn convert_handle(&mut self) -> bool {
        let Some((start, blocks)) = self.blocks() else {
            return false;
        };
        if !blocks.contains(&Block::Crosscap) || !blocks.contains(&Block::Handle) {
            return false;
        }
        let k = blocks.len();
        let idx = (0..k)
            .find(|&t| blocks[t] == Block::Crosscap && blocks[(t + 1) % k] == Block::Handle)
            .expect("crosscap next to a handle");
        let offset: usize = blocks[..idx]
            .iter()
            .map(|b| if *b == Block::Crosscap { 2 } else { 4 })
            .sum();
        let mut w = rotate(&self.word, start + offset);
        let a = w[2].letter;
        if w[2].inverse {
            flip_letter(&mut w, a);
        }
        let fresh = self.fresh();
        self.word = cut_glue(&w, 1, 3, a, fresh);
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Crosscap,
    Handle,
}

/// Reduces a scheme to its canonical word: `a a'` for the sphere,
/// `a b a' b' c d c' d' …` for orientable genus `g`, or `a a b b …` for
/// `k` crosscaps.
///
/// Adjacent inverse pairs are cancelled and vertices merged first, then
/// crosscaps and handles are gathered into blocks; a handle sharing the
/// word with a crosscap is converted into two more crosscaps.
pub fn normalize(s: &GluingScheme) -> GluingScheme {
    let mut r = Reducer {
        word: s.word.clone(),
        next: s.letter_count(),
    };
    r.reduce_vertices();
    if r.word.len() == 2 {
        return if r.word[0].inverse == r.word[1].inverse {
            GluingScheme::nonorientable(1)
        } else {
            GluingScheme::sphere()
        };
    }
    r.gather();
    while r.convert_handle() {
        r.gather();
    }
    let (start, _) = r.blocks().expect("gathered word splits into blocks");
    let mut w = rotate(&r.word, start);
    // make the first occurrence of every letter positive
    let mut seen = vec![false; r.next];
    for p in 0..w.len() {
        let l = w[p].letter;
        if !std::mem::replace(&mut seen[l], true) && w[p].inverse {
            flip_letter(&mut w, l);
        }
    }
    GluingScheme::from_anonymous(&w)
}

/// The mod-2 intersection pairing on `H₁(Σ; Z/2)` with the letters of a
/// one-vertex word as basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionForm {
    pub basis_labels: Vec<String>,
    pub gram: F2Matrix,
}

impl IntersectionForm {
    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn empty() -> Self {
        Self {
            basis_labels: Vec::new(),
            gram: F2Matrix::zeros(0, 0),
        }
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// Form of a disjoint union. Labels of the second summand get a `*`
    /// suffix added until they no longer collide.
    pub fn direct_sum(&self, other: &IntersectionForm) -> IntersectionForm {
        let mut labels = self.basis_labels.clone();
        for l in &other.basis_labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('*');
            }
            labels.push(l);
        }
        IntersectionForm {
            basis_labels: labels,
            gram: self.gram.direct_sum(&other.gram),
        }
    }
}

/// Reads the intersection form of a one-vertex scheme.
///
/// Distinct letters pair to 1 when their occurrences interleave; a letter
/// pairs with itself to 1 when both occurrences carry the same sign. The
/// sphere (whose canonical word has two vertices) gets the zero-dimensional
/// form.
pub fn intersection_form(s: &GluingScheme) -> Result<IntersectionForm, SurfaceError> {
    let info = analyze(s);
    if info.euler_char == 2 {
        return Ok(IntersectionForm::empty());
    }
    if info.vertex_count != 1 {
        return Err(SurfaceError::MultipleVertices {
            vertices: info.vertex_count,
        });
    }
    let m = s.letter_count();
    let pos: Vec<(usize, usize)> = (0..m).map(|l| positions(&s.word, l)).collect();
    let mut gram = F2Matrix::zeros(m, m);
    for a in 0..m {
        let (a1, a2) = pos[a];
        gram.set(a, a, s.word[a1].inverse == s.word[a2].inverse);
        for b in 0..m {
            if a == b {
                continue;
            }
            let (b1, b2) = pos[b];
            let inside = |p: usize| a1 < p && p < a2;
            if inside(b1) != inside(b2) {
                gram.set(a, b, true);
            }
        }
    }
    Ok(IntersectionForm {
        basis_labels: s.names.clone(),
        gram,
    })
}

/// The scheme itself if it already has one vertex (or is the sphere),
/// otherwise its normal form.
pub fn one_vertex_form(s: &GluingScheme) -> GluingScheme {
    let info = analyze(s);
    if info.vertex_count == 1 || info.euler_char == 2 {
        s.clone()
    } else {
        normalize(s)
    }
}

use serde::Serialize;

use crate::pairing::{EdgeCycle, FacePairing, Letter};
use crate::polyhedron::Polyhedron;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relation {
    pub letters: Vec<Letter>,
    pub text: String,
}

impl Relation {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// One generator per unordered pair `{s, s̄}`. The relations `I_(s̄) I_s = 1`
/// are built into the generators; what remains is `x^2 = 1` for each
/// self-paired face and one relation per geometric cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn text(&self) -> String {
        let mut s = format!("generators: {}\n", self.generators.join(", "));
        s.push_str("relations:\n");
        for r in &self.relations {
            s.push_str(&format!("  {} = 1\n", r.text));
        }
        s
    }
}

fn cancels(a: Letter, b: Letter) -> bool {
    a.generator == b.generator && a.inverse != b.inverse
}

/// Free and cyclic reduction.
fn cyclically_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        if out.last().is_some_and(|&m| cancels(m, l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && cancels(out[0], out[out.len() - 1]) {
        out.pop();
        out.remove(0);
    }
    out
}

/// Replaces a relation by its inverse when that has fewer inverted letters.
fn prefer_positive(word: Vec<Letter>) -> Vec<Letter> {
    let inverted = word.iter().filter(|l| l.inverse).count();
    if 2 * inverted > word.len() {
        word.into_iter().rev().map(|l| Letter { inverse: !l.inverse, ..l }).collect()
    } else {
        word
    }
}

/// `a b^-1 c^3`: runs of one letter collapsed into powers.
fn render(gens: &[String], word: &[Letter]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let e = (j - i) as i64 * if word[i].inverse { -1 } else { 1 };
        let g = &gens[word[i].generator];
        parts.push(if e == 1 { g.clone() } else { format!("{g}^{e}") });
        i = j;
    }
    parts.join(" ")
}

/// The cycle relation of `c` reads `I_(s_n) ... I_(s_1)` repeated `k` times.
pub fn presentation<T: Real>(p: &Polyhedron<T>, fp: &FacePairing<T>, cycles: &[EdgeCycle<T>]) -> Presentation {
    let mut words: Vec<Vec<Letter>> = Vec::new();
    for s in 0..p.faces.len() {
        if fp.partner[s] == s {
            words.push(vec![fp.letters[s]; 2]);
        }
    }
    for c in cycles.iter().filter(|c| c.is_geometric()) {
        let once: Vec<Letter> = c.terms.iter().rev().map(|t| fp.letters[t.to]).collect();
        let word = prefer_positive(cyclically_reduce(once.repeat(c.multiplicity)));
        if !word.is_empty() {
            words.push(word);
        }
    }
    Presentation {
        generators: fp.generators.clone(),
        relations: words.into_iter().map(|w| Relation { text: render(&fp.generators, &w), letters: w }).collect(),
    }
}

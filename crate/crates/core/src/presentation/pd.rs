use std::collections::BTreeMap;

use super::Presentation;
use crate::error::{Error, Result};
use crate::freegroup::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingSign {
    Positive,
    Negative,
}

/// One crossing `X[i, j, k, l]`: `i` is the incoming under-edge, labels
/// run counterclockwise, so `k` is the outgoing under-edge and `j`, `l`
/// lie on the over-strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub labels: [u64; 4],
    pub sign: CrossingSign,
}

impl Crossing {
    /// Crossing with its sign read off the edge labelling, following the
    /// usual convention that labels increase along the orientation.
    pub fn inferred(labels: [u64; 4]) -> Self {
        let [i, j, k, l] = labels.map(|x| x as i64);
        let positive = i == j || k == l || j - l == 1 || l - j > 1;
        Crossing { labels, sign: if positive { CrossingSign::Positive } else { CrossingSign::Negative } }
    }
}

/// A planar diagram code of a one-component knot diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PdCode {
    crossings: Vec<Crossing>,
}

impl PdCode {
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        let mut count: BTreeMap<u64, usize> = BTreeMap::new();
        for c in &crossings {
            for &l in &c.labels {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((l, n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(Error::MalformedPd(format!("edge {l} appears {n} times")));
        }
        let pd = PdCode { crossings };
        let components = pd.components(&count);
        if components > 1 {
            return Err(Error::MalformedPd(format!("diagram has {components} components")));
        }
        Ok(pd)
    }

    /// Parses one crossing per line, `X a b c d [+|-]`; `X[a,b,c,d]` also
    /// works. Without a sign the crossing sign is inferred from the labels.
    pub fn parse(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let body = content.strip_prefix('X').ok_or_else(|| Error::parse(line, "crossing lines start with `X`"))?;
            let tokens: Vec<&str> = body.split(|c: char| c.is_whitespace() || "[],".contains(c)).filter(|t| !t.is_empty()).collect();
            let (labels, sign) = match tokens.as_slice() {
                [a, b, c, d] => ([*a, *b, *c, *d], None),
                [a, b, c, d, s] => ([*a, *b, *c, *d], Some(*s)),
                _ => return Err(Error::parse(line, "expected four edge labels and an optional sign")),
            };
            let mut parsed = [0u64; 4];
            for (slot, t) in parsed.iter_mut().zip(labels) {
                *slot = t.parse().map_err(|_| Error::parse(line, format!("bad edge label `{t}`")))?;
            }
            let crossing = match sign {
                None => Crossing::inferred(parsed),
                Some("+") => Crossing { labels: parsed, sign: CrossingSign::Positive },
                Some("-") => Crossing { labels: parsed, sign: CrossingSign::Negative },
                Some(s) => return Err(Error::parse(line, format!("bad crossing sign `{s}`"))),
            };
            crossings.push(crossing);
        }
        PdCode::new(crossings)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    fn components(&self, labels: &BTreeMap<u64, usize>) -> usize {
        let index: BTreeMap<u64, usize> = labels.keys().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut uf = UnionFind::new(index.len());
        for c in &self.crossings {
            let [i, j, k, l] = c.labels.map(|x| index[&x]);
            uf.union(i, k);
            uf.union(j, l);
        }
        (0..index.len()).filter(|&i| uf.find(i) == i).count()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Wirtinger presentation of a PD code.
///
/// Generators are the arcs (over-strand edges `j`, `l` of a crossing are
/// glued), named `x1, x2, ...` in order of their smallest edge label. A
/// positive crossing with over-arc `o`, incoming under-arc `a` and outgoing
/// under-arc `b` contributes `o a o^-1 b^-1`; a negative one `o^-1 a o b^-1`.
/// The last relator is dropped, and the meridian is `x1`.
pub fn wirtinger_from_pd(pd: &PdCode) -> Result<Presentation> {
    if pd.crossings.is_empty() {
        return Presentation::new(vec!["x1".to_string()], Vec::new(), Word::generator(0));
    }
    let labels: Vec<u64> = {
        let mut v: Vec<u64> = pd.crossings.iter().flat_map(|c| c.labels).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let index = |l: u64| labels.binary_search(&l).expect("label present");
    let mut uf = UnionFind::new(labels.len());
    for c in &pd.crossings {
        uf.union(index(c.labels[1]), index(c.labels[3]));
    }
    // arc ids in order of smallest member label (roots are minimal indices)
    let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..labels.len() {
        let r = uf.find(i);
        let next = arc_of_root.len();
        arc_of_root.entry(r).or_insert(next);
    }
    let arc = |uf: &mut UnionFind, l: u64| arc_of_root[&uf.find(index(l))];
    let arcs = arc_of_root.len();
    if arcs != pd.crossings.len() {
        return Err(Error::MalformedPd(format!("{} arcs for {} crossings", arcs, pd.crossings.len())));
    }
    let mut relators = Vec::with_capacity(pd.crossings.len());
    for c in &pd.crossings {
        let [i, j, k, _] = c.labels;
        let (a, o, b) = (arc(&mut uf, i), arc(&mut uf, j), arc(&mut uf, k));
        let e = match c.sign {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        };
        relators.push(Word::from_pairs(&[(o, e), (a, 1), (o, -e), (b, -1)]));
    }
    relators.pop();
    let names = (1..=arcs).map(|i| format!("x{i}")).collect();
    Presentation::new(names, relators, Word::generator(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";

    #[test]
    fn trefoil_shape() {
        let p = wirtinger_from_pd(&PdCode::parse(TREFOIL).unwrap()).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.alpha(), &[1, 1, 1]);
        for r in p.relators() {
            assert_eq!(r.len(), 4);
            assert_eq!(r.exponent_sums(3).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn bracket_syntax_and_signs() {
        let pd = PdCode::parse("X[1,4,2,5]\nX[3,6,4,1] -\nX[5,2,6,3]").unwrap();
        let signs: Vec<_> = pd.crossings().iter().map(|c| c.sign).collect();
        assert_eq!(signs, vec![CrossingSign::Negative; 3]);
        let fig8 = PdCode::parse("X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n").unwrap();
        let signs: Vec<_> = fig8.crossings().iter().map(|c| c.sign).collect();
        assert_eq!(signs.iter().filter(|s| **s == CrossingSign::Positive).count(), 2);
    }

    #[test]
    fn unknot_from_empty_code() {
        let p = wirtinger_from_pd(&PdCode::parse("# no crossings\n").unwrap()).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn malformed_codes() {
        assert!(matches!(PdCode::parse("X 1 2 3 4\n"), Err(Error::MalformedPd(_))));
        assert!(matches!(PdCode::parse("X 1 4 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(PdCode::parse("Y 1 4 2 5\n"), Err(Error::Parse { .. })));
        assert!(matches!(PdCode::parse("X 1 4 2 5 *\n"), Err(Error::Parse { .. })));
        // two disjoint Hopf-like pieces: each label twice but two components
        let two = "X 1 3 2 4\nX 2 4 1 3\nX 5 7 6 8\nX 6 8 5 7\n";
        assert!(matches!(PdCode::parse(two), Err(Error::MalformedPd(_))));
    }
}

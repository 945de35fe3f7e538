//! Coloured braids and ladder webs.
//!
//! A ladder is a bottom colour sequence followed by a list of slices, each a
//! split of one edge or a merge of two adjacent edges. Positions are 0-based
//! in memory and 1-based in the JSON format.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_LABEL: u8 = 4;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColouredBraid {
    pub colours: Vec<u8>,
    /// Signed generators, `g > 0` positive crossing of strands `g, g+1`.
    pub word: Vec<i32>,
}

impl ColouredBraid {
    pub fn new(colours: Vec<u8>, word: Vec<i32>) -> Result<Self> {
        if colours.is_empty() {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        if let Some(c) = colours.iter().find(|&&c| c != 1 && c != 2) {
            return Err(Error::Parse(format!("strand colour {c} is not 1 or 2")));
        }
        let n = colours.len() as i32;
        if let Some(g) = word.iter().find(|&&g| g == 0 || g.abs() >= n) {
            return Err(Error::Parse(format!("generator {g} out of range for {n} strands")));
        }
        Ok(ColouredBraid { colours, word })
    }

    /// Parses comma-separated colour and word lists; the word may be empty.
    pub fn parse(colours: &str, word: &str) -> Result<Self> {
        fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad {what} token '{t}'"))))
                .collect()
        }
        ColouredBraid::new(list(colours, "colour")?, list(word, "word")?)
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    /// Colour sequence after the first `k` crossings.
    pub fn colours_at(&self, k: usize) -> Vec<u8> {
        let mut c = self.colours.clone();
        for g in &self.word[..k] {
            let i = g.unsigned_abs() as usize - 1;
            c.swap(i, i + 1);
        }
        c
    }

    pub fn top_colours(&self) -> Vec<u8> {
        self.colours_at(self.word.len())
    }

    /// The closure identifies top and bottom position by position, so the
    /// colour sequences must agree.
    pub fn is_closable(&self) -> bool {
        self.top_colours() == self.colours
    }

    /// `(left colour, right colour, sign)` of every crossing in order.
    pub fn crossings(&self) -> Vec<(u8, u8, i32)> {
        (0..self.word.len())
            .map(|k| {
                let c = self.colours_at(k);
                let g = self.word[k];
                let i = g.unsigned_abs() as usize - 1;
                (c[i], c[i + 1], g.signum())
            })
            .collect()
    }
}

impl fmt::Display for ColouredBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.colours.iter().map(|x| x.to_string()).collect();
        let w: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        write!(f, "colours ({}) word ({})", c.join(","), w.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Slice {
    Split { pos: usize, left: u8, right: u8 },
    Merge { pos: usize },
}

impl Slice {
    pub fn pos(&self) -> usize {
        match *self {
            Slice::Split { pos, .. } | Slice::Merge { pos } => pos,
        }
    }

    pub fn with_pos(self, p: usize) -> Slice {
        match self {
            Slice::Split { left, right, .. } => Slice::Split { pos: p, left, right },
            Slice::Merge { .. } => Slice::Merge { pos: p },
        }
    }

    /// Number of edges consumed and produced.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Slice::Split { .. } => (1, 2),
            Slice::Merge { .. } => (2, 1),
        }
    }

    /// Mirror image on a level of `width` edges.
    pub fn mirrored(self, width: usize) -> Slice {
        match self {
            Slice::Split { pos, left, right } => Slice::Split { pos: width - 1 - pos, left: right, right: left },
            Slice::Merge { pos } => Slice::Merge { pos: width - 2 - pos },
        }
    }
}

/// Where an edge segment starts: at the bottom, or as output `j` of a slice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum SegId {
    Bottom(usize),
    Out(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LadderWeb {
    pub bottom: Vec<u8>,
    pub slices: Vec<Slice>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum SliceJson {
    Split { pos: usize, left: u8, right: u8 },
    Merge { pos: usize },
}

#[derive(Serialize, Deserialize)]
struct WebJson {
    bottom: Vec<u8>,
    slices: Vec<SliceJson>,
}

impl LadderWeb {
    pub fn new(bottom: Vec<u8>, slices: Vec<Slice>) -> Result<Self> {
        let w = LadderWeb { bottom, slices };
        w.validate()?;
        Ok(w)
    }

    pub fn identity(colours: &[u8]) -> Self {
        LadderWeb { bottom: colours.to_vec(), slices: Vec::new() }
    }

    /// Checks labels, positions and flow conservation at every slice.
    pub fn validate(&self) -> Result<()> {
        if self.bottom.is_empty() {
            return Err(Error::Web { slice: 0, msg: "empty bottom".into() });
        }
        let bad = |slice: usize, msg: String| Err(Error::Web { slice, msg });
        for &c in &self.bottom {
            if c == 0 || c > MAX_LABEL {
                return bad(0, format!("bottom label {c} outside 1..={MAX_LABEL}"));
            }
        }
        let mut seq = self.bottom.clone();
        for (k, s) in self.slices.iter().enumerate() {
            match *s {
                Slice::Split { pos, left, right } => {
                    if pos >= seq.len() {
                        return bad(k, format!("split position {} beyond {} edges", pos + 1, seq.len()));
                    }
                    if left == 0 || right == 0 {
                        return bad(k, "split into an empty edge".into());
                    }
                    if left + right != seq[pos] {
                        return bad(k, format!("split {}+{} of an edge labelled {}", left, right, seq[pos]));
                    }
                    seq.splice(pos..=pos, [left, right]);
                }
                Slice::Merge { pos } => {
                    if pos + 1 >= seq.len() {
                        return bad(k, format!("merge position {} needs two edges", pos + 1));
                    }
                    let c = seq[pos] + seq[pos + 1];
                    if c > MAX_LABEL {
                        return bad(k, format!("merge creates label {c}"));
                    }
                    seq.splice(pos..=pos + 1, [c]);
                }
            }
        }
        Ok(())
    }

    /// Colour sequence at every level; level `k` lies below slice `k`.
    pub fn levels(&self) -> Vec<Vec<u8>> {
        let mut out = vec![self.bottom.clone()];
        let mut seq = self.bottom.clone();
        for s in &self.slices {
            match *s {
                Slice::Split { pos, left, right } => {
                    seq.splice(pos..=pos, [left, right]);
                }
                Slice::Merge { pos } => {
                    let c = seq[pos] + seq[pos + 1];
                    seq.splice(pos..=pos + 1, [c]);
                }
            }
            out.push(seq.clone());
        }
        out
    }

    /// Segment occupying each position, at every level.
    pub fn segment_levels(&self) -> Vec<Vec<SegId>> {
        let mut cur: Vec<SegId> = (0..self.bottom.len()).map(SegId::Bottom).collect();
        let mut out = vec![cur.clone()];
        for (k, s) in self.slices.iter().enumerate() {
            match *s {
                Slice::Split { pos, .. } => {
                    cur.splice(pos..=pos, [SegId::Out(k, 0), SegId::Out(k, 1)]);
                }
                Slice::Merge { pos } => {
                    cur.splice(pos..=pos + 1, [SegId::Out(k, 0)]);
                }
            }
            out.push(cur.clone());
        }
        out
    }

    pub fn top(&self) -> Vec<u8> {
        self.levels().pop().unwrap()
    }

    pub fn width(&self) -> usize {
        self.bottom.len()
    }

    /// `self` followed by `upper`; the boundaries must agree.
    pub fn stack(&self, upper: &LadderWeb) -> Result<LadderWeb> {
        if self.top() != upper.bottom {
            return Err(Error::Web { slice: self.slices.len(), msg: "stacked boundaries differ".into() });
        }
        let mut slices = self.slices.clone();
        slices.extend_from_slice(&upper.slices);
        Ok(LadderWeb { bottom: self.bottom.clone(), slices })
    }

    /// Places `self` at `offset` between identity strands.
    pub fn embed(&self, left: &[u8], right: &[u8]) -> LadderWeb {
        let off = left.len();
        let mut bottom = left.to_vec();
        bottom.extend_from_slice(&self.bottom);
        bottom.extend_from_slice(right);
        LadderWeb { bottom, slices: self.slices.iter().map(|s| s.with_pos(s.pos() + off)).collect() }
    }

    /// Reflection in a vertical line.
    pub fn mirrored(&self) -> LadderWeb {
        let levels = self.levels();
        let mut bottom = self.bottom.clone();
        bottom.reverse();
        let slices = self.slices.iter().enumerate().map(|(k, s)| s.mirrored(levels[k].len())).collect();
        LadderWeb { bottom, slices }
    }

    pub fn from_json(s: &str) -> Result<LadderWeb> {
        let j: WebJson = serde_json::from_str(s)?;
        let mut slices = Vec::with_capacity(j.slices.len());
        for (k, s) in j.slices.into_iter().enumerate() {
            let p = |pos: usize| {
                if pos == 0 {
                    Err(Error::Web { slice: k, msg: "positions are 1-based".into() })
                } else {
                    Ok(pos - 1)
                }
            };
            slices.push(match s {
                SliceJson::Split { pos, left, right } => Slice::Split { pos: p(pos)?, left, right },
                SliceJson::Merge { pos } => Slice::Merge { pos: p(pos)? },
            });
        }
        LadderWeb::new(j.bottom, slices)
    }

    pub fn to_json(&self) -> String {
        let j = WebJson {
            bottom: self.bottom.clone(),
            slices: self
                .slices
                .iter()
                .map(|s| match *s {
                    Slice::Split { pos, left, right } => SliceJson::Split { pos: pos + 1, left, right },
                    Slice::Merge { pos } => SliceJson::Merge { pos: pos + 1 },
                })
                .collect(),
        };
        serde_json::to_string(&j).expect("web serializes")
    }
}

impl fmt::Display for LadderWeb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.bottom)?;
        for s in &self.slices {
            match s {
                Slice::Split { pos, left, right } => write!(f, " S{}({},{})", pos + 1, left, right)?,
                Slice::Merge { pos } => write!(f, " M{}", pos + 1)?,
            }
        }
        Ok(())
    }
}

/// The local webs that resolve a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Resolution {
    TwoArcs,
    Dumbbell,
    /// Two 1-rungs through a 3-edge between two 2-strands.
    Square,
    /// Mixed crossing: 1-rung between a 2-strand and a 1-strand.
    H,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResolutionTerm {
    pub kind: Resolution,
    pub web: LadderWeb,
    /// q-shift in real degree units.
    pub q_shift: i64,
    pub hom_degree: i64,
}

fn split(pos: usize, left: u8, right: u8) -> Slice {
    Slice::Split { pos, left, right }
}

fn merge(pos: usize) -> Slice {
    Slice::Merge { pos }
}

/// The local resolution web of a crossing with bottom colours `(c1, c2)`.
pub fn local_web(c1: u8, c2: u8, kind: Resolution) -> Result<LadderWeb> {
    let w = |slices: Vec<Slice>| LadderWeb { bottom: vec![c1, c2], slices };
    Ok(match (c1, c2, kind) {
        (1, 1, Resolution::TwoArcs) | (2, 2, Resolution::TwoArcs) => w(vec![]),
        (a, b, Resolution::Dumbbell) if (1..=2).contains(&a) && (1..=2).contains(&b) => {
            w(vec![merge(0), split(0, b, a)])
        }
        (2, 2, Resolution::Square) => w(vec![split(1, 1, 1), merge(0), split(0, 2, 1), merge(1)]),
        (2, 1, Resolution::H) => w(vec![split(0, 1, 1), merge(1)]),
        (1, 2, Resolution::H) => w(vec![split(1, 1, 1), merge(0)]),
        _ => return Err(Error::Domain(format!("no {kind:?} resolution for colours ({c1},{c2})"))),
    })
}

/// Resolution terms of a crossing in increasing homological degree.
pub fn crossing_terms(c1: u8, c2: u8, sign: i32) -> Result<Vec<ResolutionTerm>> {
    if !(1..=2).contains(&c1) || !(1..=2).contains(&c2) {
        return Err(Error::Domain(format!("crossing colours ({c1},{c2}) must be 1 or 2")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("crossing sign {sign}")));
    }
    use Resolution::*;
    let table: Vec<(Resolution, i64, i64)> = match (c1, c2, sign) {
        (2, 2, 1) => vec![(TwoArcs, 6, -2), (Square, 2, -1), (Dumbbell, 0, 0)],
        (2, 2, _) => vec![(Dumbbell, -8, 0), (Square, -8, 1), (TwoArcs, -6, 2)],
        (1, 1, 1) => vec![(TwoArcs, 2, -1), (Dumbbell, 0, 0)],
        (1, 1, _) => vec![(Dumbbell, -2, 0), (TwoArcs, -2, 1)],
        (_, _, 1) => vec![(H, 2, -1), (Dumbbell, 0, 0)],
        _ => vec![(Dumbbell, -4, 0), (H, -4, 1)],
    };
    table
        .into_iter()
        .map(|(kind, q_shift, hom_degree)| Ok(ResolutionTerm { kind, web: local_web(c1, c2, kind)?, q_shift, hom_degree }))
        .collect()
}

/// Number of slices each crossing's block occupies in a resolved braid.
pub fn block_offsets(b: &ColouredBraid, choice: &[usize]) -> Result<Vec<usize>> {
    let mut off = Vec::with_capacity(choice.len());
    let mut acc = 0;
    for (k, (c1, c2, s)) in b.crossings().into_iter().enumerate() {
        off.push(acc);
        let terms = crossing_terms(c1, c2, s)?;
        acc += terms[choice[k]].web.slices.len();
    }
    Ok(off)
}

/// The braid with each crossing replaced by its chosen resolution.
pub fn resolve_braid(b: &ColouredBraid, choice: &[usize]) -> Result<LadderWeb> {
    if choice.len() != b.word.len() {
        return Err(Error::Domain(format!("{} choices for {} crossings", choice.len(), b.word.len())));
    }
    let mut web = LadderWeb::identity(&b.colours);
    for (k, (c1, c2, s)) in b.crossings().into_iter().enumerate() {
        let terms = crossing_terms(c1, c2, s)?;
        let t = terms
            .get(choice[k])
            .ok_or_else(|| Error::Domain(format!("choice {} invalid for crossing {}", choice[k], k)))?;
        let colours = b.colours_at(k);
        let i = b.word[k].unsigned_abs() as usize - 1;
        let local = t.web.embed(&colours[..i], &colours[i + 2..]);
        web = web.stack(&local)?;
    }
    Ok(web)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DiagramStats {
    pub n1_plus: i64,
    pub n1_minus: i64,
    pub n2_plus: i64,
    pub n2_minus: i64,
    pub mixed_plus: i64,
    pub mixed_minus: i64,
    pub s1: i64,
    pub s2: i64,
}

impl DiagramStats {
    /// Doubled exponent `-n1+ + n1- + s1 - 2n2+ + 2n2- + 2s2`.
    pub fn normalization2(&self) -> i64 {
        -self.n1_plus + self.n1_minus + self.s1 - 2 * self.n2_plus + 2 * self.n2_minus + 2 * self.s2
    }
}

pub fn diagram_stats(b: &ColouredBraid) -> DiagramStats {
    let mut s = DiagramStats {
        s1: b.colours.iter().filter(|&&c| c == 1).count() as i64,
        s2: b.colours.iter().filter(|&&c| c == 2).count() as i64,
        ..Default::default()
    };
    for (c1, c2, sign) in b.crossings() {
        let slot = match (c1 == c2, c1, sign > 0) {
            (true, 1, true) => &mut s.n1_plus,
            (true, 1, false) => &mut s.n1_minus,
            (true, _, true) => &mut s.n2_plus,
            (true, _, false) => &mut s.n2_minus,
            (false, _, true) => &mut s.mixed_plus,
            (false, _, false) => &mut s.mixed_minus,
        };
        *slot += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = r#"{"bottom":[2,1],"slices":[{"op":"split","pos":1,"left":1,"right":1},{"op":"merge","pos":2}]}"#;
        let w = LadderWeb::from_json(s).unwrap();
        assert_eq!(w.top(), vec![1, 2]);
        assert_eq!(w.to_json(), s);
    }

    #[test]
    fn validator_rejects_label_five() {
        let s = r#"{"bottom":[2,2,1],"slices":[{"op":"merge","pos":1},{"op":"merge","pos":1}]}"#;
        match LadderWeb::from_json(s) {
            Err(Error::Web { slice, .. }) => assert_eq!(slice, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crossing_term_tables() {
        let t = crossing_terms(2, 2, 1).unwrap();
        let v: Vec<_> = t.iter().map(|t| (t.kind, t.q_shift, t.hom_degree)).collect();
        assert_eq!(v, vec![(Resolution::TwoArcs, 6, -2), (Resolution::Square, 2, -1), (Resolution::Dumbbell, 0, 0)]);
        let t = crossing_terms(1, 1, -1).unwrap();
        assert_eq!(t.iter().map(|t| (t.q_shift, t.hom_degree)).collect::<Vec<_>>(), vec![(-2, 0), (-2, 1)]);
        let t = crossing_terms(2, 1, -1).unwrap();
        assert_eq!(t.iter().map(|t| (t.q_shift, t.hom_degree)).collect::<Vec<_>>(), vec![(-4, 0), (-4, 1)]);
        assert!(crossing_terms(3, 1, 1).is_err());
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for s in [1, -1] {
                let ts = crossing_terms(a, b, s).unwrap();
                assert!(ts.windows(2).all(|w| w[1].hom_degree == w[0].hom_degree + 1));
                let d = ts.iter().find(|t| t.hom_degree == 0).unwrap();
                assert_eq!(d.kind, Resolution::Dumbbell);
                for t in &ts {
                    t.web.validate().unwrap();
                    assert_eq!(t.web.bottom, vec![a, b]);
                    assert_eq!(t.web.top(), vec![b, a]);
                }
            }
        }
    }

    #[test]
    fn mirror_exchanges_mixed_crossings() {
        for s in [1, -1] {
            let a = crossing_terms(2, 1, s).unwrap();
            let b = crossing_terms(1, 2, s).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.web.mirrored(), y.web);
                assert_eq!(y.web.mirrored(), x.web);
                assert_eq!((x.q_shift, x.hom_degree), (y.q_shift, y.hom_degree));
            }
        }
    }

    #[test]
    fn resolve_examples() {
        let b = ColouredBraid::new(vec![2, 2], vec![]).unwrap();
        assert_eq!(resolve_braid(&b, &[]).unwrap(), LadderWeb::identity(&[2, 2]));
        let b = ColouredBraid::new(vec![2, 2], vec![1]).unwrap();
        assert_eq!(resolve_braid(&b, &[2]).unwrap(), local_web(2, 2, Resolution::Dumbbell).unwrap());
        let b = ColouredBraid::new(vec![1, 1], vec![1, -1]).unwrap();
        let w = resolve_braid(&b, &[1, 0]).unwrap();
        assert_eq!(w.slices, vec![merge(0), split(0, 1, 1), merge(0), split(0, 1, 1)]);
        assert!(resolve_braid(&b, &[2, 0]).is_err());
        let b = ColouredBraid::new(vec![1, 2, 1], vec![1, -2, 1]).unwrap();
        for c in [[0, 0, 0], [1, 1, 1], [0, 1, 0]] {
            resolve_braid(&b, &c).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn stats_examples() {
        let s = diagram_stats(&ColouredBraid::new(vec![2, 2], vec![1]).unwrap());
        assert_eq!((s.n2_plus, s.s2, s.s1), (1, 2, 0));
        let s = diagram_stats(&ColouredBraid::new(vec![1, 2], vec![1, 1]).unwrap());
        assert_eq!((s.n1_plus, s.n2_plus, s.mixed_plus, s.s1, s.s2), (0, 0, 2, 1, 1));
        let s = diagram_stats(&ColouredBraid::new(vec![1, 1], vec![-1]).unwrap());
        assert_eq!((s.n1_minus, s.s1), (1, 2));
    }

    #[test]
    fn closability() {
        assert!(!ColouredBraid::new(vec![1, 2], vec![1]).unwrap().is_closable());
        assert!(ColouredBraid::new(vec![1, 2], vec![1, 1]).unwrap().is_closable());
        assert!(ColouredBraid::parse("1,2", "1,x").is_err());
        assert_eq!(ColouredBraid::parse("2", "").unwrap().word, Vec::<i32>::new());
    }
}

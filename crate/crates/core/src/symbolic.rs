//! Symbols, finite words and eventually periodic sequences over `{0, 1, C}`,
//! together with the parity-lexicographic order.
//!
//! The order declares `0 < C < 1` symbolwise and reverses direction after a
//! common prefix containing an odd number of `1`s. Comparisons always carry
//! an explicit depth and `EqToDepth` is a distinct outcome, not equality:
//! a finite computation can only ever certify what it has inspected.

use std::fmt;

use crate::{Error, Result};

/// One symbol of the itinerary alphabet. The derived order is the
/// symbolwise order `Zero < Crit < One`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Zero,
    Crit,
    One,
}

impl Symbol {
    pub fn to_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Crit => 'C',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            'C' | 'c' => Ok(Symbol::Crit),
            other => Err(Error::Parse(format!("unknown symbol `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A finite word over the alphabet. The empty word is permitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars().map(Symbol::from_char).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.0.get(i).copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    /// A word is even when it contains an even number of `1`s; `C` and `0`
    /// do not affect parity.
    pub fn parity(&self) -> Parity {
        if self.0.iter().filter(|s| **s == Symbol::One).count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn first_crit(&self) -> Option<usize> {
        self.0.iter().position(|s| *s == Symbol::Crit)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// An eventually periodic sequence `preperiod (period)^∞` in canonical form:
/// the period is primitive (not a power of a shorter word) and the
/// preperiod is as short as possible. Canonical form makes equality of
/// sequences decidable by structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpSeq {
    pre: Word,
    per: Word,
}

impl EpSeq {
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::Parse("empty period".into()));
        }
        let mut seq = EpSeq { pre, per };
        seq.canonicalize();
        Ok(seq)
    }

    pub fn periodic(per: Word) -> Result<Self> {
        EpSeq::new(Word::empty(), per)
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    pub fn symbol_at(&self, i: usize) -> Symbol {
        if i < self.pre.len() {
            self.pre.0[i]
        } else {
            self.per.0[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.symbol_at(i)).collect()
    }

    pub fn shift(&self, n: usize) -> EpSeq {
        let mut seq = if n <= self.pre.len() {
            EpSeq { pre: Word(self.pre.0[n..].to_vec()), per: self.per.clone() }
        } else {
            let k = (n - self.pre.len()) % self.per.len();
            let mut rotated = self.per.0[k..].to_vec();
            rotated.extend_from_slice(&self.per.0[..k]);
            EpSeq { pre: Word::empty(), per: Word(rotated) }
        };
        seq.canonicalize();
        seq
    }

    fn canonicalize(&mut self) {
        // Reduce the period to its primitive root.
        let n = self.per.len();
        for d in 1..=n / 2 {
            if n % d == 0 && (d..n).all(|i| self.per.0[i] == self.per.0[i % d]) {
                self.per.0.truncate(d);
                break;
            }
        }
        // Absorb a preperiod suffix that merely repeats the tail of the
        // period: `100(110)` and `10(011)` denote the same sequence.
        while let Some(&last) = self.pre.0.last() {
            if last == *self.per.0.last().unwrap() {
                self.pre.0.pop();
                let tail = self.per.0.pop().unwrap();
                self.per.0.insert(0, tail);
            } else {
                break;
            }
        }
    }
}

impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.pre, self.per)
    }
}

/// Uniform read access to a symbol source: either a finite word with an
/// unknown tail, or an exact eventually periodic sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqView {
    Finite(Word),
    Periodic(EpSeq),
}

/// Outcome of a depth-bounded parity-lexicographic comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlexOrder {
    Lt,
    Gt,
    EqToDepth,
}

impl SeqView {
    pub fn word(w: Word) -> Self {
        SeqView::Finite(w)
    }

    pub fn seq(s: EpSeq) -> Self {
        SeqView::Periodic(s)
    }

    /// `None` means the view is infinite.
    pub fn known_len(&self) -> Option<usize> {
        match self {
            SeqView::Finite(w) => Some(w.len()),
            SeqView::Periodic(_) => None,
        }
    }

    pub fn has_depth(&self, depth: usize) -> bool {
        self.known_len().map_or(true, |n| n >= depth)
    }

    pub fn symbol_at(&self, i: usize) -> Option<Symbol> {
        match self {
            SeqView::Finite(w) => w.get(i),
            SeqView::Periodic(s) => Some(s.symbol_at(i)),
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n).filter_map(|i| self.symbol_at(i)).collect()
    }

    pub fn shift(&self, n: usize) -> Result<SeqView> {
        match self {
            SeqView::Finite(w) => {
                if n > w.len() {
                    Err(Error::InsufficientPrefix { wanted: n, known: w.len() })
                } else {
                    Ok(SeqView::Finite(Word(w.0[n..].to_vec())))
                }
            }
            SeqView::Periodic(s) => Ok(SeqView::Periodic(s.shift(n))),
        }
    }

    pub fn first_crit(&self, depth: usize) -> Option<usize> {
        let limit = match self.known_len() {
            Some(n) => n.min(depth),
            None => depth,
        };
        (0..limit).find(|&i| self.symbol_at(i) == Some(Symbol::Crit))
    }

    /// Parse the `PRE(PERIOD)` text format; a bare word is a finite word.
    pub fn parse(text: &str) -> Result<SeqView> {
        let s = text.trim();
        match s.find('(') {
            None => Ok(SeqView::Finite(Word::parse(s)?)),
            Some(open) => {
                let close = s.rfind(')').ok_or_else(|| Error::Parse(format!("unbalanced parens in `{text}`")))?;
                if close != s.len() - 1 || close < open {
                    return Err(Error::Parse(format!("malformed sequence `{text}`")));
                }
                let pre = Word::parse(&s[..open])?;
                let per = Word::parse(&s[open + 1..close])?;
                Ok(SeqView::Periodic(EpSeq::new(pre, per)?))
            }
        }
    }
}

impl fmt::Display for SeqView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqView::Finite(w) => write!(f, "{w}"),
            SeqView::Periodic(s) => write!(f, "{s}"),
        }
    }
}

/// Least index `k < depth` where the views disagree, or `None` if they
/// agree on the entire inspected prefix. Insufficient known prefix is an
/// error, not `None`.
pub fn discrepancy(s: &SeqView, t: &SeqView, depth: usize) -> Result<Option<usize>> {
    ensure_depth(s, depth)?;
    ensure_depth(t, depth)?;
    for k in 0..depth {
        if s.symbol_at(k) != t.symbol_at(k) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Depth-bounded parity-lexicographic comparison. At the first
/// disagreement the common prefix's parity decides the direction:
/// even keeps the symbolwise order `0 < C < 1`, odd reverses it.
pub fn plex_compare(s: &SeqView, t: &SeqView, depth: usize) -> Result<PlexOrder> {
    ensure_depth(s, depth)?;
    ensure_depth(t, depth)?;
    let mut parity = Parity::Even;
    for k in 0..depth {
        let a = s.symbol_at(k).unwrap();
        let b = t.symbol_at(k).unwrap();
        if a != b {
            let lt = match parity {
                Parity::Even => a < b,
                Parity::Odd => a > b,
            };
            return Ok(if lt { PlexOrder::Lt } else { PlexOrder::Gt });
        }
        if a == Symbol::One {
            parity = parity.flip();
        }
    }
    Ok(PlexOrder::EqToDepth)
}

/// All start positions `p` with `from <= p <= horizon - |needle|` where the
/// needle occurs in the view.
pub fn find_segment(needle: &Word, hay: &SeqView, from: usize, horizon: usize) -> Result<Vec<usize>> {
    ensure_depth(hay, horizon)?;
    let mut hits = Vec::new();
    if needle.len() > horizon {
        return Ok(hits);
    }
    for p in from..=horizon - needle.len() {
        if (0..needle.len()).all(|i| hay.symbol_at(p + i) == Some(needle.0[i])) {
            hits.push(p);
        }
    }
    Ok(hits)
}

fn ensure_depth(v: &SeqView, depth: usize) -> Result<()> {
    match v.known_len() {
        Some(n) if n < depth => Err(Error::InsufficientPrefix { wanted: depth, known: n }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn view(s: &str) -> SeqView {
        SeqView::parse(s).unwrap()
    }

    #[test]
    fn parity_counts_ones_only() {
        assert_eq!(w("").parity(), Parity::Even);
        assert_eq!(w("110").parity(), Parity::Even);
        assert_eq!(w("10").parity(), Parity::Odd);
        assert_eq!(w("C1C").parity(), Parity::Odd);
    }

    #[test]
    fn discrepancy_examples() {
        let s = view("(101)");
        assert_eq!(discrepancy(&s, &s.clone(), 50).unwrap(), None);
        assert_eq!(discrepancy(&view("10"), &view("11"), 2).unwrap(), Some(1));
        // 100110110... against 1000...
        assert_eq!(discrepancy(&view("100(110)"), &view("1000"), 4).unwrap(), Some(3));
        assert!(discrepancy(&view("10"), &view("11"), 3).is_err());
    }

    #[test]
    fn plex_basic_directions() {
        assert_eq!(plex_compare(&view("00"), &view("01"), 2).unwrap(), PlexOrder::Lt);
        // odd prefix "1" reverses the symbolwise order: 11 comes before 10
        assert_eq!(plex_compare(&view("11"), &view("10"), 2).unwrap(), PlexOrder::Lt);
        assert_eq!(plex_compare(&view("10"), &view("11"), 2).unwrap(), PlexOrder::Gt);
    }

    #[test]
    fn plex_crit_between() {
        assert_eq!(plex_compare(&view("0C"), &view("01"), 2).unwrap(), PlexOrder::Lt);
        assert_eq!(plex_compare(&view("0C"), &view("00"), 2).unwrap(), PlexOrder::Gt);
    }

    #[test]
    fn plex_after_odd_ones_run() {
        // window ...110 followed by 0 against the same prefix followed by 1,
        // with an odd number of 1s before the discrepancy: the 0-side wins.
        let a = view("101100");
        let b = view("101101");
        assert_eq!(w("10110").parity(), Parity::Odd);
        assert_eq!(plex_compare(&a, &b, 6).unwrap(), PlexOrder::Gt);
    }

    #[test]
    fn canonical_form() {
        let s = EpSeq::new(w("100"), w("110")).unwrap();
        assert_eq!(s.preperiod(), &w("10"));
        assert_eq!(s.period(), &w("011"));
        let t = EpSeq::new(w("10"), w("011")).unwrap();
        assert_eq!(s, t);
        // period reduced to its primitive root
        let u = EpSeq::new(Word::empty(), w("101101")).unwrap();
        assert_eq!(u.period(), &w("101"));
        // idempotence
        let v = EpSeq::new(s.preperiod().clone(), s.period().clone()).unwrap();
        assert_eq!(v, s);
    }

    #[test]
    fn shift_examples() {
        let s = EpSeq::periodic(w("101")).unwrap();
        assert_eq!(s.shift(3), s);
        let t = EpSeq::new(w("100"), w("110")).unwrap();
        assert_eq!(t.shift(3), EpSeq::periodic(w("110")).unwrap());
        let fin = view("10110").shift(2).unwrap();
        assert_eq!(fin.known_len(), Some(3));
    }

    #[test]
    fn shift_composes() {
        let t = EpSeq::new(w("100"), w("110")).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(t.shift(a).shift(b), t.shift(a + b));
            }
        }
    }

    #[test]
    fn segments() {
        let hay = SeqView::seq(EpSeq::periodic(w("110")).unwrap());
        assert_eq!(find_segment(&w("110"), &hay, 0, 9).unwrap(), vec![0, 3, 6]);
        let hay2 = view("100(110)");
        assert_eq!(find_segment(&w("111"), &hay2, 0, 60).unwrap(), Vec::<usize>::new());
        let hay3 = SeqView::seq(EpSeq::periodic(w("101")).unwrap());
        assert_eq!(find_segment(&w("00"), &hay3, 0, 30).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn parse_rejects_empty_period() {
        assert!(SeqView::parse("10()").is_err());
        assert!(SeqView::parse("1(0").is_err());
        assert!(SeqView::parse("2(0)").is_err());
    }

    #[test]
    fn plex_total_and_antisymmetric() {
        let words = ["000", "001", "010", "011", "100", "101", "110", "111", "0C1", "1C0"];
        for a in &words {
            for b in &words {
                let ab = plex_compare(&view(a), &view(b), 3).unwrap();
                let ba = plex_compare(&view(b), &view(a), 3).unwrap();
                match ab {
                    PlexOrder::Lt => assert_eq!(ba, PlexOrder::Gt),
                    PlexOrder::Gt => assert_eq!(ba, PlexOrder::Lt),
                    PlexOrder::EqToDepth => assert_eq!(ba, PlexOrder::EqToDepth),
                }
            }
        }
    }
}

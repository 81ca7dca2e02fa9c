use std::cmp::Ordering;
use std::fmt;

/// Base characters in MMP order. Labels past the end of this list reuse it
/// with one more `+` prefix per wrap.
pub const ALPHABET: &[u8; 90] =
    b"123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~";

const fn build_rank() -> [u8; 128] {
    let mut rank = [u8::MAX; 128];
    let mut i = 0;
    while i < ALPHABET.len() {
        rank[ALPHABET[i] as usize] = i as u8;
        i += 1;
    }
    rank
}

static RANK: [u8; 128] = build_rank();

/// Returns true if `c` may appear as the base character of a label.
pub fn is_base_char(c: u8) -> bool {
    c < 128 && RANK[c as usize] != u8::MAX
}

/// A vertex name: one base character preceded by `prefix` plus signs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    prefix: u16,
    base: u8,
}

impl VertexLabel {
    pub fn new(prefix: u16, base: u8) -> Option<Self> {
        is_base_char(base).then_some(VertexLabel { prefix, base })
    }

    /// The `i`-th label in MMP order.
    pub fn from_index(i: usize) -> Self {
        let prefix = u16::try_from(i / ALPHABET.len()).expect("label index out of range");
        VertexLabel { prefix, base: ALPHABET[i % ALPHABET.len()] }
    }

    pub fn index(self) -> usize {
        self.prefix as usize * ALPHABET.len() + RANK[self.base as usize] as usize
    }

    pub fn prefix(self) -> u16 {
        self.prefix
    }

    pub fn base(self) -> char {
        self.base as char
    }

    /// Parses a complete label such as `A` or `++7`.
    pub fn parse(s: &str) -> Option<Self> {
        let bytes = s.as_bytes();
        let (&base, pluses) = bytes.split_last()?;
        if !pluses.iter().all(|&b| b == b'+') {
            return None;
        }
        VertexLabel::new(u16::try_from(pluses.len()).ok()?, base)
    }
}

impl Ord for VertexLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.prefix {
            f.write_str("+")?;
        }
        write!(f, "{}", self.base as char)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

//! Ranked alphabets and their binary encoding.
//!
//! Every distinct symbol *name* receives one codeword of `width` bits; symbols
//! that share a name but differ in arity (`b:0` and `b:2`) share the codeword,
//! since the arity of a transition is already fixed by its super-state.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One position of a [`SymbolAssignment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ternary {
    Zero,
    One,
    /// Matches both values.
    Any,
}

impl Ternary {
    pub fn matches(self, bit: bool) -> bool {
        match self {
            Ternary::Zero => !bit,
            Ternary::One => bit,
            Ternary::Any => true,
        }
    }

    fn from_bit(bit: bool) -> Self {
        if bit {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }
}

/// A fixed-width cube over `{0, 1, X}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolAssignment(Vec<Ternary>);

impl SymbolAssignment {
    pub fn new(values: Vec<Ternary>) -> Self {
        SymbolAssignment(values)
    }

    /// The all-don't-care cube of the given width.
    pub fn any(width: usize) -> Self {
        SymbolAssignment(vec![Ternary::Any; width])
    }

    /// Big-endian encoding of `code` on `width` bits.
    pub fn from_code(code: u64, width: usize) -> Self {
        SymbolAssignment(
            (0..width)
                .map(|j| Ternary::from_bit((code >> (width - 1 - j)) & 1 == 1))
                .collect(),
        )
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Ternary] {
        &self.0
    }

    pub fn get(&self, pos: usize) -> Ternary {
        self.0[pos]
    }

    pub fn set(&mut self, pos: usize, value: Ternary) {
        self.0[pos] = value;
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(|t| *t != Ternary::Any)
    }

    /// True when the total codeword `code` lies inside the cube.
    pub fn contains_code(&self, code: u64) -> bool {
        let width = self.width();
        self.0
            .iter()
            .enumerate()
            .all(|(j, t)| t.matches((code >> (width - 1 - j)) & 1 == 1))
    }

    /// Every total assignment compatible with the cube, as codes.
    pub fn codes(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        for t in &self.0 {
            out = out
                .into_iter()
                .flat_map(|c| match t {
                    Ternary::Zero => vec![c << 1],
                    Ternary::One => vec![(c << 1) | 1],
                    Ternary::Any => vec![c << 1, (c << 1) | 1],
                })
                .collect();
        }
        out
    }

    /// Positions `offset, offset + stride, ...`; picks one bank out of an
    /// interleaved pair cube.
    pub fn stride(&self, offset: usize, stride: usize) -> SymbolAssignment {
        SymbolAssignment(self.0.iter().skip(offset).step_by(stride).copied().collect())
    }
}

impl fmt::Display for SymbolAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            let c = match t {
                Ternary::Zero => '0',
                Ternary::One => '1',
                Ternary::Any => 'X',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for SymbolAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(offset, c)| match c {
                '0' => Ok(Ternary::Zero),
                '1' => Ok(Ternary::One),
                'X' | 'x' => Ok(Ternary::Any),
                _ => Err(Error::TermSyntax {
                    offset,
                    message: format!("unexpected cube character `{c}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(SymbolAssignment)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.arity)
    }
}

/// Collects symbols before the codewords are fixed.
#[derive(Debug, Default, Clone)]
pub struct AlphabetBuilder {
    symbols: Vec<Symbol>,
    width: Option<usize>,
}

impl AlphabetBuilder {
    pub fn add_symbol(&mut self, name: &str, arity: usize) -> Result<SymbolId> {
        if self.symbols.iter().any(|s| s.name == name && s.arity == arity) {
            return Err(Error::DuplicateSymbol {
                name: name.to_string(),
                arity,
            });
        }
        self.symbols.push(Symbol {
            name: name.to_string(),
            arity,
        });
        Ok(SymbolId(self.symbols.len() as u32 - 1))
    }

    /// Requests a wider encoding than strictly necessary.
    pub fn width(&mut self, width: usize) -> &mut Self {
        self.width = Some(width);
        self
    }

    /// Assigns codewords by counting over distinct names in registration order.
    pub fn freeze(self) -> Result<Alphabet> {
        let mut names: Vec<String> = Vec::new();
        let mut code_of_name: HashMap<String, u64> = HashMap::new();
        for s in &self.symbols {
            if !code_of_name.contains_key(&s.name) {
                code_of_name.insert(s.name.clone(), names.len() as u64);
                names.push(s.name.clone());
            }
        }
        let minimum = ceil_log2(names.len());
        let width = match self.width {
            Some(w) if w < minimum => {
                return Err(Error::WidthTooSmall {
                    requested: w,
                    minimum,
                })
            }
            Some(w) => w,
            None => minimum,
        };
        let codes = self.symbols.iter().map(|s| code_of_name[&s.name]).collect();
        let by_key = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, s)| ((s.name.clone(), s.arity), SymbolId(i as u32)))
            .collect();
        Ok(Alphabet {
            symbols: self.symbols,
            codes,
            names,
            by_key,
            width,
        })
    }
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        ((n - 1).ilog2() + 1) as usize
    }
}

/// A frozen ranked alphabet with its encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    codes: Vec<u64>,
    names: Vec<String>,
    by_key: HashMap<(String, usize), SymbolId>,
    width: usize,
}

impl Alphabet {
    pub fn builder() -> AlphabetBuilder {
        AlphabetBuilder::default()
    }

    /// Builds an alphabet from `(name, arity)` pairs.
    pub fn from_symbols<'a, I>(symbols: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = (&'a str, usize)>,
    {
        let mut builder = Alphabet::builder();
        for (name, arity) in symbols {
            builder.add_symbol(name, arity)?;
        }
        builder.freeze()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (SymbolId(i as u32), s))
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.index()]
    }

    pub fn arity(&self, id: SymbolId) -> usize {
        self.symbols[id.index()].arity
    }

    pub fn lookup(&self, name: &str, arity: usize) -> Option<SymbolId> {
        self.by_key.get(&(name.to_string(), arity)).copied()
    }

    pub fn resolve(&self, name: &str, arity: usize) -> Result<SymbolId> {
        self.lookup(name, arity).ok_or_else(|| Error::UnknownSymbol {
            name: name.to_string(),
            arity,
        })
    }

    pub fn code(&self, id: SymbolId) -> u64 {
        self.codes[id.index()]
    }

    /// Distinct names in codeword order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Arities that occur in the alphabet, ascending.
    pub fn arities(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.symbols.iter().map(|s| s.arity).collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    pub fn symbols_of_arity(&self, arity: usize) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols()
            .filter(move |(_, s)| s.arity == arity)
            .map(|(id, _)| id)
    }

    pub fn encode(&self, id: SymbolId) -> SymbolAssignment {
        SymbolAssignment::from_code(self.code(id), self.width)
    }

    /// Symbols whose codeword lies in `cube`, in registration order.
    pub fn decode_cube(
        &self,
        cube: &SymbolAssignment,
        arity: Option<usize>,
    ) -> Result<Vec<SymbolId>> {
        if cube.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: cube.width(),
            });
        }
        Ok(self
            .symbols()
            .filter(|(id, s)| {
                arity.is_none_or(|a| a == s.arity) && cube.contains_code(self.code(*id))
            })
            .map(|(id, _)| id)
            .collect())
    }

    /// Interleaved `(a1, b1, ..., an, bn)` cube for a relabelling pair.
    pub fn encode_pair(&self, input: SymbolId, output: SymbolId) -> Result<SymbolAssignment> {
        let (ai, ao) = (self.arity(input), self.arity(output));
        if ai != ao {
            return Err(Error::ArityMismatch {
                expected: ai,
                found: ao,
            });
        }
        Ok(interleave(&self.encode(input), &self.encode(output)))
    }
}

/// Interleaves two equal-width cubes as `(a1, b1, ..., an, bn)`.
pub fn interleave(a: &SymbolAssignment, b: &SymbolAssignment) -> SymbolAssignment {
    debug_assert_eq!(a.width(), b.width());
    SymbolAssignment(
        a.values()
            .iter()
            .zip(b.values())
            .flat_map(|(x, y)| [*x, *y])
            .collect(),
    )
}

//! Finite relational structures and atomic types of element pairs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Name of the unary relation marking the root of a rooted path structure.
pub const ROOT: &str = "root";
/// Name of the binary relation used for graph-like structures.
pub const EDGE: &str = "E";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("empty universe")]
    EmptyUniverse,
    #[error("duplicate element `{0}` in universe")]
    DuplicateElement(String),
    #[error("unknown element `{element}` in relation `{symbol}`")]
    UnknownElement { symbol: String, element: String },
    #[error("unknown element `{0}`")]
    UnknownElementId(String),
    #[error("arity mismatch for `{symbol}`: expected {expected}, found {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("relation symbol `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("duplicate relation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("duplicate tuple in relation `{0}`")]
    DuplicateTuple(String),
    #[error("vocabulary lacks the unary symbol `root`")]
    MissingRoot,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("bad root: {0}")]
    BadRoot(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// A finite relational signature: symbol names with their arities, in
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IndexMap<String, usize>", into = "IndexMap<String, usize>")]
pub struct Vocabulary {
    symbols: IndexMap<String, usize>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self, StructureError> {
        let mut map = IndexMap::new();
        for (name, arity) in symbols {
            let name = name.into();
            if arity == 0 {
                return Err(StructureError::ZeroArity(name));
            }
            if map.insert(name.clone(), arity).is_some() {
                return Err(StructureError::DuplicateSymbol(name));
            }
        }
        Ok(Vocabulary { symbols: map })
    }

    /// `{root/1, E/2}`, the vocabulary of rooted oriented paths and of the
    /// longshort reduction.
    pub fn rooted_digraph() -> Self {
        Vocabulary::new([(ROOT, 1), (EDGE, 2)]).expect("static vocabulary")
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.symbols.get(symbol).copied()
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.contains_key(symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.symbols.iter().map(|(s, &a)| (s.as_str(), a))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// True when both vocabularies declare the same symbols with the same
    /// arities, regardless of declaration order.
    pub fn same_as(&self, other: &Vocabulary) -> bool {
        self.symbols.len() == other.symbols.len()
            && self.symbols.iter().all(|(s, a)| other.symbols.get(s) == Some(a))
    }
}

impl TryFrom<IndexMap<String, usize>> for Vocabulary {
    type Error = StructureError;

    fn try_from(map: IndexMap<String, usize>) -> Result<Self, Self::Error> {
        Vocabulary::new(map)
    }
}

impl From<Vocabulary> for IndexMap<String, usize> {
    fn from(v: Vocabulary) -> Self {
        v.symbols
    }
}

/// The serialized shape of a structure: element names instead of indices.
///
/// This is also the JSON exchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStructure {
    pub vocabulary: IndexMap<String, usize>,
    pub universe: Vec<String>,
    #[serde(default)]
    pub relations: IndexMap<String, Vec<Vec<String>>>,
}

/// A validated finite structure. Elements are addressed by their position
/// in the universe; tuples are stored as index vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    vocabulary: Vocabulary,
    universe: Vec<String>,
    index: HashMap<String, usize>,
    relations: IndexMap<String, BTreeSet<Vec<usize>>>,
}

impl Structure {
    /// Checks every structure invariant and reports the first violation.
    pub fn validate(vocabulary: &Vocabulary, raw: &RawStructure) -> Result<Structure, StructureError> {
        if raw.universe.is_empty() {
            return Err(StructureError::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(raw.universe.len());
        for (i, name) in raw.universe.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(StructureError::DuplicateElement(name.clone()));
            }
        }
        let mut relations: IndexMap<String, BTreeSet<Vec<usize>>> =
            vocabulary.symbols().map(|(s, _)| (s.to_string(), BTreeSet::new())).collect();
        for (symbol, tuples) in &raw.relations {
            let arity = vocabulary
                .arity(symbol)
                .ok_or_else(|| StructureError::UnknownSymbol(symbol.clone()))?;
            let target = relations.get_mut(symbol).expect("symbol present");
            for tuple in tuples {
                if tuple.len() != arity {
                    return Err(StructureError::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: arity,
                        found: tuple.len(),
                    });
                }
                let ids = tuple
                    .iter()
                    .map(|e| {
                        index.get(e).copied().ok_or_else(|| StructureError::UnknownElement {
                            symbol: symbol.clone(),
                            element: e.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if !target.insert(ids) {
                    return Err(StructureError::DuplicateTuple(symbol.clone()));
                }
            }
        }
        Ok(Structure { vocabulary: vocabulary.clone(), universe: raw.universe.clone(), index, relations })
    }

    /// Validates a raw structure against its own declared vocabulary.
    pub fn from_raw(raw: &RawStructure) -> Result<Structure, StructureError> {
        let vocab = Vocabulary::new(raw.vocabulary.iter().map(|(s, &a)| (s.clone(), a)))?;
        Structure::validate(&vocab, raw)
    }

    /// Builds a structure from index tuples. Tuples repeated in the input are
    /// merged.
    pub fn from_indices<S: Into<String>>(
        vocabulary: Vocabulary,
        universe: Vec<String>,
        relations: impl IntoIterator<Item = (S, Vec<Vec<usize>>)>,
    ) -> Result<Structure, StructureError> {
        if universe.is_empty() {
            return Err(StructureError::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(universe.len());
        for (i, name) in universe.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(StructureError::DuplicateElement(name.clone()));
            }
        }
        let mut rels: IndexMap<String, BTreeSet<Vec<usize>>> =
            vocabulary.symbols().map(|(s, _)| (s.to_string(), BTreeSet::new())).collect();
        for (symbol, tuples) in relations {
            let symbol = symbol.into();
            let arity = vocabulary
                .arity(&symbol)
                .ok_or_else(|| StructureError::UnknownSymbol(symbol.clone()))?;
            let target = rels.get_mut(&symbol).expect("symbol present");
            for t in tuples {
                if t.len() != arity {
                    return Err(StructureError::ArityMismatch { symbol, expected: arity, found: t.len() });
                }
                if let Some(&bad) = t.iter().find(|&&e| e >= universe.len()) {
                    return Err(StructureError::UnknownElement { symbol, element: format!("#{bad}") });
                }
                target.insert(t);
            }
        }
        Ok(Structure { vocabulary, universe, index, relations: rels })
    }

    pub fn to_raw(&self) -> RawStructure {
        RawStructure {
            vocabulary: self.vocabulary.symbols().map(|(s, a)| (s.to_string(), a)).collect(),
            universe: self.universe.clone(),
            relations: self
                .relations
                .iter()
                .map(|(s, ts)| {
                    let named = ts
                        .iter()
                        .map(|t| t.iter().map(|&e| self.universe[e].clone()).collect())
                        .collect();
                    (s.clone(), named)
                })
                .collect(),
        }
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn name(&self, element: usize) -> &str {
        &self.universe[element]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn element_or_err(&self, name: &str) -> Result<usize, StructureError> {
        self.element(name).ok_or_else(|| StructureError::UnknownElementId(name.to_string()))
    }

    /// Tuples of `symbol`, or `None` for an unknown symbol.
    pub fn relation(&self, symbol: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.relations.get(symbol)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &BTreeSet<Vec<usize>>)> + '_ {
        self.relations.iter().map(|(s, ts)| (s.as_str(), ts))
    }

    pub fn contains_tuple(&self, symbol: &str, tuple: &[usize]) -> bool {
        self.relations.get(symbol).is_some_and(|ts| ts.contains(tuple))
    }

    /// The Gaifman graph: an edge between distinct elements that occur
    /// together in some tuple.
    pub fn gaifman(&self) -> Graph {
        let mut g = Graph::new(self.len());
        for ts in self.relations.values() {
            for t in ts {
                for (i, &a) in t.iter().enumerate() {
                    for &b in &t[i + 1..] {
                        if a != b {
                            g.add_edge(a, b);
                        }
                    }
                }
            }
        }
        g
    }

    /// The atomic type of the pair `(a, b)`.
    pub fn atomic_type(&self, a: usize, b: usize) -> AtomicType {
        let mut atoms = BTreeSet::new();
        if a == b {
            atoms.insert(Atom::Eq12);
        }
        let mut buf = Vec::new();
        for (symbol, arity) in self.vocabulary.symbols() {
            let rel = &self.relations[symbol];
            if rel.is_empty() {
                continue;
            }
            for pattern in patterns(arity) {
                buf.clear();
                buf.extend(pattern.iter().map(|&v| if v == 1 { a } else { b }));
                if rel.contains(&buf) {
                    atoms.insert(Atom::Rel { symbol: symbol.to_string(), pattern });
                }
            }
        }
        AtomicType(atoms)
    }

    /// [`Structure::atomic_type`] addressed by element names.
    pub fn atomic_type_of(&self, a: &str, b: &str) -> Result<AtomicType, StructureError> {
        Ok(self.atomic_type(self.element_or_err(a)?, self.element_or_err(b)?))
    }

    /// The substructure induced on `keep`, with universe in the order given.
    /// Returns it together with the map from new to old indices.
    pub fn induced(&self, keep: &[usize]) -> (Structure, Vec<usize>) {
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &old) in keep.iter().enumerate() {
            new_of[old] = i;
        }
        let universe = keep.iter().map(|&e| self.universe[e].clone()).collect::<Vec<_>>();
        let index = universe.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let relations = self
            .relations
            .iter()
            .map(|(s, ts)| {
                let kept = ts
                    .iter()
                    .filter(|t| t.iter().all(|&e| new_of[e] != usize::MAX))
                    .map(|t| t.iter().map(|&e| new_of[e]).collect())
                    .collect();
                (s.clone(), kept)
            })
            .collect();
        (Structure { vocabulary: self.vocabulary.clone(), universe, index, relations }, keep.to_vec())
    }

    /// A copy whose unary `symbol` relation is exactly `{element}`.
    pub fn with_singleton(&self, symbol: &str, element: usize) -> Structure {
        let mut out = self.clone();
        out.relations.insert(symbol.to_string(), BTreeSet::from([vec![element]]));
        out
    }
}

/// All patterns in `{1,2}^arity`, in lexicographic order.
pub fn patterns(arity: usize) -> Vec<Vec<u8>> {
    (0..1usize << arity)
        .map(|bits| (0..arity).map(|i| if bits >> (arity - 1 - i) & 1 == 0 { 1 } else { 2 }).collect())
        .collect()
}

/// An atomic two-variable formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `x1 = x2`.
    Eq12,
    /// `R(x_{pattern[0]}, ..., x_{pattern[r-1]})`, pattern entries are 1 or 2.
    Rel { symbol: String, pattern: Vec<u8> },
}

impl Atom {
    pub fn rel(symbol: &str, pattern: &[u8]) -> Atom {
        Atom::Rel { symbol: symbol.to_string(), pattern: pattern.to_vec() }
    }

    fn swapped(&self) -> Atom {
        match self {
            Atom::Eq12 => Atom::Eq12,
            Atom::Rel { symbol, pattern } => {
                Atom::Rel { symbol: symbol.clone(), pattern: pattern.iter().map(|&v| 3 - v).collect() }
            }
        }
    }

    fn holds(&self, s: &Structure, a: usize, b: usize, buf: &mut Vec<usize>) -> bool {
        match self {
            Atom::Eq12 => a == b,
            Atom::Rel { symbol, pattern } => {
                buf.clear();
                buf.extend(pattern.iter().map(|&v| if v == 1 { a } else { b }));
                s.contains_tuple(symbol, buf)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq12 => write!(f, "eq12"),
            Atom::Rel { symbol, pattern } => {
                let p: Vec<String> = pattern.iter().map(u8::to_string).collect();
                write!(f, "{symbol}@({})", p.join(","))
            }
        }
    }
}

/// The set of atomic two-variable formulas satisfied by an ordered pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicType(BTreeSet<Atom>);

impl AtomicType {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        AtomicType(atoms.into_iter().collect())
    }

    /// The type of the reversed pair.
    pub fn swap(&self) -> AtomicType {
        AtomicType(self.0.iter().map(Atom::swapped).collect())
    }

    pub fn is_subset(&self, other: &AtomicType) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ⊆ atyp((a, b), s)` without materializing the right-hand side.
    pub fn holds_in(&self, s: &Structure, a: usize, b: usize) -> bool {
        let mut buf = Vec::new();
        self.0.iter().all(|atom| atom.holds(s, a, b, &mut buf))
    }
}

impl fmt::Display for AtomicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Atom::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The pair unchanged for even `l`, reversed for odd `l`.
pub fn edge_power<T>(pair: (T, T), l: usize) -> (T, T) {
    if l.is_multiple_of(2) {
        pair
    } else {
        (pair.1, pair.0)
    }
}

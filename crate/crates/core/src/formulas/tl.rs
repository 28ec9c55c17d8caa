use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, LazyLock, Mutex};

/// A temporal-logic formula over strict Until and Since.
///
/// Formulas are hash-consed: structurally equal formulas share one node, so
/// equality and hashing are constant time and evaluation can memoize on node
/// identity. `G`, `H`, `K+`, `K-` and `false` are not constructors; they expand
/// to the core connectives.
#[derive(Clone)]
pub struct TlFormula(Arc<Node>);

struct Node {
    kind: TlKind,
    size: u64,
    depth: u32,
    shash: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TlKind {
    True,
    Atom(Arc<str>),
    Not(TlFormula),
    Or(TlFormula, TlFormula),
    And(TlFormula, TlFormula),
    Until(TlFormula, TlFormula),
    Since(TlFormula, TlFormula),
}

static INTERNER: LazyLock<Mutex<HashMap<TlKind, TlFormula>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl TlFormula {
    fn intern(kind: TlKind) -> TlFormula {
        let mut table = INTERNER.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = table.get(&kind) {
            return f.clone();
        }
        let (size, depth) = match &kind {
            TlKind::True | TlKind::Atom(_) => (1u64, 0u32),
            TlKind::Not(a) => (a.size().saturating_add(1), a.depth() + 1),
            TlKind::Or(a, b) | TlKind::And(a, b) | TlKind::Until(a, b) | TlKind::Since(a, b) => (
                a.size().saturating_add(b.size()).saturating_add(1),
                a.depth().max(b.depth()) + 1,
            ),
        };
        let mut h = DefaultHasher::new();
        match &kind {
            TlKind::True => 0u8.hash(&mut h),
            TlKind::Atom(name) => {
                1u8.hash(&mut h);
                name.hash(&mut h);
            }
            TlKind::Not(a) => {
                2u8.hash(&mut h);
                a.0.shash.hash(&mut h);
            }
            TlKind::Or(a, b) | TlKind::And(a, b) | TlKind::Until(a, b) | TlKind::Since(a, b) => {
                let tag = match &kind {
                    TlKind::Or(..) => 3u8,
                    TlKind::And(..) => 4,
                    TlKind::Until(..) => 5,
                    _ => 6,
                };
                tag.hash(&mut h);
                a.0.shash.hash(&mut h);
                b.0.shash.hash(&mut h);
            }
        }
        let f = TlFormula(Arc::new(Node {
            kind: kind.clone(),
            size,
            depth,
            shash: h.finish(),
        }));
        table.insert(kind, f.clone());
        f
    }

    pub fn kind(&self) -> &TlKind {
        &self.0.kind
    }

    /// Number of AST nodes of the formula written out as a tree (saturating).
    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    /// Stable identity of the shared node, usable as a memo key.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn tt() -> Self {
        Self::intern(TlKind::True)
    }

    /// `false`, which is `!true`.
    pub fn ff() -> Self {
        Self::not(Self::tt())
    }

    pub fn atom(name: &str) -> Self {
        Self::intern(TlKind::Atom(Arc::from(name)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: TlFormula) -> Self {
        Self::intern(TlKind::Not(f))
    }

    pub fn or(a: TlFormula, b: TlFormula) -> Self {
        Self::intern(TlKind::Or(a, b))
    }

    pub fn and(a: TlFormula, b: TlFormula) -> Self {
        Self::intern(TlKind::And(a, b))
    }

    pub fn until(a: TlFormula, b: TlFormula) -> Self {
        Self::intern(TlKind::Until(a, b))
    }

    pub fn since(a: TlFormula, b: TlFormula) -> Self {
        Self::intern(TlKind::Since(a, b))
    }

    /// `G f`: `!(true U !f)`.
    pub fn always_future(f: TlFormula) -> Self {
        Self::not(Self::until(Self::tt(), Self::not(f)))
    }

    /// `H f` (G⁻): `!(true S !f)`.
    pub fn always_past(f: TlFormula) -> Self {
        Self::not(Self::since(Self::tt(), Self::not(f)))
    }

    /// `K+ f`: `!((!f) U true)`.
    pub fn k_plus(f: TlFormula) -> Self {
        Self::not(Self::until(Self::not(f), Self::tt()))
    }

    /// `K- f`: `!((!f) S true)`.
    pub fn k_minus(f: TlFormula) -> Self {
        Self::not(Self::since(Self::not(f), Self::tt()))
    }

    pub fn is_true(&self) -> bool {
        matches!(self.kind(), TlKind::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self.kind(), TlKind::Not(a) if a.is_true())
    }

    /// Swaps every Until with Since. An involution.
    pub fn mirror(&self) -> TlFormula {
        let mut memo = HashMap::new();
        self.mirror_memo(&mut memo)
    }

    fn mirror_memo(&self, memo: &mut HashMap<usize, TlFormula>) -> TlFormula {
        if let Some(m) = memo.get(&self.id()) {
            return m.clone();
        }
        let out = match self.kind() {
            TlKind::True | TlKind::Atom(_) => self.clone(),
            TlKind::Not(a) => Self::not(a.mirror_memo(memo)),
            TlKind::Or(a, b) => Self::or(a.mirror_memo(memo), b.mirror_memo(memo)),
            TlKind::And(a, b) => Self::and(a.mirror_memo(memo), b.mirror_memo(memo)),
            TlKind::Until(a, b) => Self::since(a.mirror_memo(memo), b.mirror_memo(memo)),
            TlKind::Since(a, b) => Self::until(a.mirror_memo(memo), b.mirror_memo(memo)),
        };
        memo.insert(self.id(), out.clone());
        out
    }

    /// Atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> Vec<String> {
        let mut seen = std::collections::HashSet::new();
        let mut out = std::collections::BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.id()) {
                continue;
            }
            match f.kind() {
                TlKind::True => {}
                TlKind::Atom(a) => {
                    out.insert(a.to_string());
                }
                TlKind::Not(a) => stack.push(a.clone()),
                TlKind::Or(a, b) | TlKind::And(a, b) | TlKind::Until(a, b) | TlKind::Since(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
            }
        }
        out.into_iter().collect()
    }

    /// Prefix s-expression rendering, e.g. `(U P (not Q))`.
    pub fn to_sexpr(&self) -> String {
        let mut s = String::new();
        self.write_sexpr(&mut s);
        s
    }

    fn write_sexpr(&self, s: &mut String) {
        match self.kind() {
            TlKind::True => s.push_str("true"),
            TlKind::Atom(a) => s.push_str(a),
            TlKind::Not(a) => {
                s.push_str("(not ");
                a.write_sexpr(s);
                s.push(')');
            }
            TlKind::Or(a, b) | TlKind::And(a, b) | TlKind::Until(a, b) | TlKind::Since(a, b) => {
                s.push('(');
                s.push_str(match self.kind() {
                    TlKind::Or(..) => "or",
                    TlKind::And(..) => "and",
                    TlKind::Until(..) => "U",
                    _ => "S",
                });
                s.push(' ');
                a.write_sexpr(s);
                s.push(' ');
                b.write_sexpr(s);
                s.push(')');
            }
        }
    }

    fn structural_cmp(&self, other: &TlFormula) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        fn tag(k: &TlKind) -> u8 {
            match k {
                TlKind::True => 0,
                TlKind::Atom(_) => 1,
                TlKind::Not(_) => 2,
                TlKind::Or(..) => 3,
                TlKind::And(..) => 4,
                TlKind::Until(..) => 5,
                TlKind::Since(..) => 6,
            }
        }
        tag(self.kind()).cmp(&tag(other.kind())).then_with(|| {
            match (self.kind(), other.kind()) {
                (TlKind::Atom(a), TlKind::Atom(b)) => a.cmp(b),
                (TlKind::Not(a), TlKind::Not(b)) => a.cmp(b),
                (TlKind::Or(a1, b1), TlKind::Or(a2, b2))
                | (TlKind::And(a1, b1), TlKind::And(a2, b2))
                | (TlKind::Until(a1, b1), TlKind::Until(a2, b2))
                | (TlKind::Since(a1, b1), TlKind::Since(a2, b2)) => {
                    a1.cmp(a2).then_with(|| b1.cmp(b2))
                }
                _ => Ordering::Equal,
            }
        })
    }
}

impl PartialEq for TlFormula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for TlFormula {}

impl Hash for TlFormula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.shash);
    }
}

/// Deterministic across runs: size first, then structural hash, then
/// structure.
impl Ord for TlFormula {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.shash.cmp(&other.0.shash))
            .then_with(|| self.structural_cmp(other))
    }
}

impl PartialOrd for TlFormula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TlKind::True => write!(f, "true"),
            TlKind::Atom(a) => write!(f, "{a}"),
            TlKind::Not(a) => write!(f, "!{a}"),
            TlKind::Or(a, b) => write!(f, "({a} | {b})"),
            TlKind::And(a, b) => write!(f, "({a} & {b})"),
            TlKind::Until(a, b) => write!(f, "({a} U {b})"),
            TlKind::Since(a, b) => write!(f, "({a} S {b})"),
        }
    }
}

impl fmt::Debug for TlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 200 {
            write!(f, "{self}")
        } else {
            write!(f, "<tl formula of size {}>", self.size())
        }
    }
}

/// Constant-folding constructors. Every rewrite is valid over all chains.
pub mod fold {
    use super::{TlFormula, TlKind};

    pub fn not(f: TlFormula) -> TlFormula {
        match f.kind() {
            TlKind::Not(a) => a.clone(),
            _ => TlFormula::not(f),
        }
    }

    fn is_negation_of(a: &TlFormula, b: &TlFormula) -> bool {
        matches!(a.kind(), TlKind::Not(x) if x == b) || matches!(b.kind(), TlKind::Not(x) if x == a)
    }

    pub fn and(a: TlFormula, b: TlFormula) -> TlFormula {
        if a.is_true() || b.is_false() {
            return b;
        }
        if b.is_true() || a.is_false() || a == b {
            return a;
        }
        if is_negation_of(&a, &b) {
            return TlFormula::ff();
        }
        if a <= b {
            TlFormula::and(a, b)
        } else {
            TlFormula::and(b, a)
        }
    }

    pub fn or(a: TlFormula, b: TlFormula) -> TlFormula {
        if a.is_false() || b.is_true() {
            return b;
        }
        if b.is_false() || a.is_true() || a == b {
            return a;
        }
        if is_negation_of(&a, &b) {
            return TlFormula::tt();
        }
        if a <= b {
            TlFormula::or(a, b)
        } else {
            TlFormula::or(b, a)
        }
    }

    pub fn until(a: TlFormula, b: TlFormula) -> TlFormula {
        if b.is_false() {
            return b;
        }
        TlFormula::until(a, b)
    }

    pub fn since(a: TlFormula, b: TlFormula) -> TlFormula {
        if b.is_false() {
            return b;
        }
        TlFormula::since(a, b)
    }

    pub fn and_all(items: impl IntoIterator<Item = TlFormula>) -> TlFormula {
        items.into_iter().fold(TlFormula::tt(), and)
    }

    pub fn or_all(items: impl IntoIterator<Item = TlFormula>) -> TlFormula {
        items.into_iter().fold(TlFormula::ff(), or)
    }

    /// `G f`, folded.
    pub fn always_future(f: TlFormula) -> TlFormula {
        not(until(TlFormula::tt(), not(f)))
    }

    /// `H f`, folded.
    pub fn always_past(f: TlFormula) -> TlFormula {
        not(since(TlFormula::tt(), not(f)))
    }

    pub fn k_plus(f: TlFormula) -> TlFormula {
        not(until(not(f), TlFormula::tt()))
    }

    pub fn k_minus(f: TlFormula) -> TlFormula {
        not(since(not(f), TlFormula::tt()))
    }

    /// Re-folds the boolean skeleton of `f` as evaluated at a point known to
    /// have a later point (`has_later`) and/or an earlier one (`has_earlier`).
    /// At such a point `true U true` (resp. `true S true`) is true. Subformulas
    /// under a modality are evaluated elsewhere and are left alone.
    pub fn at_point(f: &TlFormula, has_later: bool, has_earlier: bool) -> TlFormula {
        match f.kind() {
            TlKind::Until(a, b) if has_later && a.is_true() && b.is_true() => TlFormula::tt(),
            TlKind::Since(a, b) if has_earlier && a.is_true() && b.is_true() => TlFormula::tt(),
            TlKind::Not(a) => not(at_point(a, has_later, has_earlier)),
            TlKind::And(a, b) => and(
                at_point(a, has_later, has_earlier),
                at_point(b, has_later, has_earlier),
            ),
            TlKind::Or(a, b) => or(
                at_point(a, has_later, has_earlier),
                at_point(b, has_later, has_earlier),
            ),
            _ => f.clone(),
        }
    }

    /// Top-level conjuncts of `f`.
    pub fn conjuncts(f: &TlFormula) -> Vec<TlFormula> {
        let mut out = Vec::new();
        let mut stack = vec![f.clone()];
        while let Some(g) = stack.pop() {
            match g.kind() {
                TlKind::And(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                TlKind::True => {}
                _ => out.push(g),
            }
        }
        out
    }

    /// Top-level disjuncts of `f`.
    pub fn disjuncts(f: &TlFormula) -> Vec<TlFormula> {
        let mut out = Vec::new();
        let mut stack = vec![f.clone()];
        while let Some(g) = stack.pop() {
            match g.kind() {
                TlKind::Or(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                _ if g.is_false() => {}
                _ => out.push(g),
            }
        }
        out
    }

    /// A cheap sufficient test for `a -> b` being valid.
    pub fn implies(a: &TlFormula, b: &TlFormula) -> bool {
        if a == b || b.is_true() || a.is_false() {
            return true;
        }
        let ca = conjuncts(a);
        if conjuncts(b).iter().all(|c| ca.contains(c)) {
            return true;
        }
        let db = disjuncts(b);
        disjuncts(a).iter().all(|d| db.contains(d))
    }
}

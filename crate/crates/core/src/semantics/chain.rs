use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A finite labeled linear order: positions `0..size` under the usual order,
/// and for each atom the set of positions where it holds. Atoms without an
/// entry hold nowhere.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain {
    size: usize,
    labels: BTreeMap<String, Vec<bool>>,
}

impl Chain {
    pub fn new(size: usize) -> Self {
        Chain {
            size,
            labels: BTreeMap::new(),
        }
    }

    /// Declares `atom` (possibly with an empty position list) and marks its
    /// positions.
    pub fn with_label(
        mut self,
        atom: &str,
        positions: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut row = vec![false; self.size];
        for p in positions {
            if p >= self.size {
                return Err(Error::MalformedChain(format!(
                    "position {p} of `{atom}` is outside 0..{}",
                    self.size
                )));
            }
            row[p] = true;
        }
        self.labels.insert(atom.to_string(), row);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn holds(&self, atom: &str, position: usize) -> bool {
        self.labels
            .get(atom)
            .and_then(|row| row.get(position).copied())
            .unwrap_or(false)
    }

    /// The truth row of `atom`, or `None` for an undeclared atom.
    pub fn row(&self, atom: &str) -> Option<&[bool]> {
        self.labels.get(atom).map(|r| r.as_slice())
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.labels.keys().map(|s| s.as_str())
    }

    pub fn positions(&self, atom: &str) -> Vec<usize> {
        (0..self.size).filter(|&p| self.holds(atom, p)).collect()
    }

    /// The order-reversed chain: position `p` becomes `size - 1 - p`.
    pub fn reverse(&self) -> Chain {
        Chain {
            size: self.size,
            labels: self
                .labels
                .iter()
                .map(|(a, row)| (a.clone(), row.iter().rev().copied().collect()))
                .collect(),
        }
    }
}

/// `n=5; P=0,2,4; Q=1`
impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.size)?;
        for atom in self.labels.keys() {
            let ps: Vec<String> = self.positions(atom).iter().map(|p| p.to_string()).collect();
            write!(f, "; {atom}={}", ps.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::MalformedChain(msg);
        let mut parts = s.split(';').map(str::trim).filter(|p| !p.is_empty());
        let head = parts.next().ok_or_else(|| bad("missing size declaration".into()))?;
        let (key, value) = head
            .split_once('=')
            .ok_or_else(|| bad(format!("expected `n=<size>`, found `{head}`")))?;
        if key.trim() != "n" {
            return Err(bad(format!("expected `n=<size>`, found `{head}`")));
        }
        let size: usize = value
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid size `{}`", value.trim())))?;
        let mut chain = Chain::new(size);
        for part in parts {
            let (atom, list) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected `<atom>=<positions>`, found `{part}`")))?;
            let atom = atom.trim();
            let valid_name = atom
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && atom
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !valid_name {
                return Err(bad(format!("invalid atom name `{atom}`")));
            }
            if chain.labels.contains_key(atom) {
                return Err(bad(format!("atom `{atom}` declared twice")));
            }
            let mut positions = Vec::new();
            for item in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                positions.push(
                    item.parse::<usize>()
                        .map_err(|_| bad(format!("invalid position `{item}` for `{atom}`")))?,
                );
            }
            chain = chain.with_label(atom, positions)?;
        }
        Ok(chain)
    }
}

/// Every chain of size `0..=max_size` with every labeling over `atoms`,
/// each exactly once: sizes ascending, then labelings by the bitmask whose
/// bit `a * n + p` says atom `a` holds at `p`.
pub fn enumerate_chains(max_size: usize, atoms: &[String]) -> impl Iterator<Item = Chain> + '_ {
    (0..=max_size).flat_map(move |n| {
        let bits = atoms.len() * n;
        assert!(bits < 64, "too many labelings to enumerate");
        (0..(1u64 << bits)).map(move |mask| {
            let mut chain = Chain::new(n);
            for (a, atom) in atoms.iter().enumerate() {
                let row = (0..n).map(|p| mask >> (a * n + p) & 1 == 1).collect();
                chain.labels.insert(atom.clone(), row);
            }
            chain
        })
    })
}

/// Number of chains `enumerate_chains(max_size, atoms)` yields.
pub fn chain_count(max_size: usize, atom_count: usize) -> u64 {
    (0..=max_size).map(|n| 1u64 << (atom_count * n)).sum()
}

/// A labeling probability `num/den`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Density {
    num: u32,
    den: u32,
}

impl Density {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::MalformedChain(format!("density {num}/{den} is not in [0,1]")));
        }
        Ok(Density { num, den })
    }

    pub fn half() -> Self {
        Density { num: 1, den: 2 }
    }
}

impl FromStr for Density {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedChain(format!("invalid density `{s}`, expected NUM/DEN"));
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        Density::new(
            n.trim().parse().map_err(|_| bad())?,
            d.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A chain of the given size where each (atom, position) is labeled
/// independently with probability `density`. Deterministic in `seed`.
pub fn random_chain(seed: u64, size: usize, atoms: &[String], density: Density) -> Chain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = Chain::new(size);
    for atom in atoms {
        let row = (0..size)
            .map(|_| rng.gen_range(0..density.den) < density.num)
            .collect();
        chain.labels.insert(atom.clone(), row);
    }
    chain
}

/// `count` random chains of size at most `max_size`: sizes come from one
/// stream seeded with `seed`, and chain `i` is labeled from the seed
/// `seed * 1_000_003 + i`.
pub fn random_chains(seed: u64, count: usize, max_size: usize, atoms: &[String], density: Density) -> Vec<Chain> {
    let mut sizes = ChaCha8Rng::seed_from_u64(seed);
    (0..count as u64)
        .map(|i| {
            let n = sizes.gen_range(0..=max_size);
            random_chain(seed.wrapping_mul(1_000_003).wrapping_add(i), n, atoms, density)
        })
        .collect()
}

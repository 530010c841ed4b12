use std::fmt;

use crate::error::{Error, Result};

/// One of the three qubit holders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Position of the qubit in the basis index, A being the most significant.
    pub fn index(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    pub fn from_index(index: usize) -> Option<Party> {
        Party::ALL.get(index).copied()
    }

    /// The two parties other than `self`, in canonical order.
    pub fn others(self) -> [Party; 2] {
        match self {
            Party::A => [Party::B, Party::C],
            Party::B => [Party::A, Party::C],
            Party::C => [Party::A, Party::B],
        }
    }

    pub fn label(self) -> char {
        match self {
            Party::A => 'A',
            Party::B => 'B',
            Party::C => 'C',
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl std::str::FromStr for Party {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Party::A),
            "B" | "b" => Ok(Party::B),
            "C" | "c" => Ok(Party::C),
            other => Err(format!("unknown party `{other}`")),
        }
    }
}

/// A subset of {A, B, C}, stored as a bitmask over qubit positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PartySet(u8);

impl PartySet {
    pub const EMPTY: PartySet = PartySet(0);

    pub fn of(parties: &[Party]) -> PartySet {
        parties.iter().fold(PartySet::EMPTY, |set, &p| set.with(p))
    }

    pub fn single(party: Party) -> PartySet {
        PartySet::EMPTY.with(party)
    }

    pub fn pair(first: Party, second: Party) -> PartySet {
        PartySet::single(first).with(second)
    }

    pub fn with(self, party: Party) -> PartySet {
        PartySet(self.0 | (1 << party.index()))
    }

    pub fn contains(self, party: Party) -> bool {
        self.0 & (1 << party.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in canonical (A < B < C) order.
    pub fn parties(self) -> Vec<Party> {
        Party::ALL.into_iter().filter(|&p| self.contains(p)).collect()
    }

    /// Qubit positions kept, restricted to an `n_qubits`-party register.
    pub(crate) fn positions(self, n_qubits: usize) -> Result<Vec<usize>> {
        let parties = self.parties();
        if parties.is_empty()
            || parties.len() >= n_qubits
            || parties.iter().any(|p| p.index() >= n_qubits)
        {
            return Err(Error::InvalidPartySet(self.to_string(), n_qubits));
        }
        Ok(parties.iter().map(|p| p.index()).collect())
    }
}

impl fmt::Display for PartySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for p in self.parties() {
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

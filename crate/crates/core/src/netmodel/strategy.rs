use crate::error::{Error, Result};
use crate::netmodel::action::{Attack, FlowAction};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom<A> {
    pub action: A,
    pub prob: Rational,
}

/// Finite-support mixed strategy. Every listed atom has strictly positive
/// probability and the probabilities sum to exactly one, so the atom list is
/// the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedStrategy<A> {
    atoms: Vec<Atom<A>>,
}

pub type MixedFlowStrategy = MixedStrategy<FlowAction>;
pub type MixedAttackStrategy = MixedStrategy<Attack>;

impl<A> MixedStrategy<A> {
    pub fn new(atoms: Vec<(A, Rational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidStrategy("no atoms".into()));
        }
        if let Some((_, p)) = atoms.iter().find(|(_, p)| !p.is_positive()) {
            return Err(Error::InvalidStrategy(format!("atom probability {p} is not positive")));
        }
        let total: Rational = atoms.iter().map(|(_, p)| p).sum();
        if total != Rational::one() {
            return Err(Error::InvalidStrategy(format!("probabilities sum to {total}, not 1")));
        }
        Ok(MixedStrategy { atoms: atoms.into_iter().map(|(action, prob)| Atom { action, prob }).collect() })
    }

    /// Like [`MixedStrategy::new`] but silently drops zero-probability atoms,
    /// for closed-form constructions evaluated at an interval endpoint.
    pub fn from_weights(atoms: Vec<(A, Rational)>) -> Result<Self> {
        MixedStrategy::new(atoms.into_iter().filter(|(_, p)| !p.is_zero()).collect())
    }

    pub fn pure(action: A) -> Self {
        MixedStrategy { atoms: vec![Atom { action, prob: Rational::one() }] }
    }

    pub fn atoms(&self) -> &[Atom<A>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&A, &Rational)> {
        self.atoms.iter().map(|a| (&a.action, &a.prob))
    }

    /// Total probability of atoms satisfying `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&A) -> bool) -> Rational {
        self.atoms.iter().filter(|a| pred(&a.action)).map(|a| &a.prob).sum()
    }

    /// Expectation of `f` under this strategy.
    pub fn expect(&self, mut f: impl FnMut(&A) -> Rational) -> Rational {
        self.atoms.iter().map(|a| &a.prob * f(&a.action)).sum()
    }
}

//! Reduction systems, normal forms and overlap checks.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Coeff;
use crate::registry::{Named, Registry};

use super::poly::NcPoly;
use super::word::{Alphabet, Word, WordOrdering};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub pattern: Word,
    pub replacement: NcPoly,
}

impl Rule {
    pub fn new(pattern: Word, replacement: NcPoly) -> Self {
        Rule {
            pattern,
            replacement,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.pattern, self.replacement)
    }
}

/// One applicable rewrite inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RuleMatch {
    pub rule: usize,
    pub position: usize,
}

/// Picks which of the applicable rewrites of a monomial to perform.
pub trait RewriteStrategy: Named + Send + Sync {
    /// `matches` is never empty; returns an index into it.
    fn select(&self, word: &Word, matches: &[RuleMatch], step: usize) -> usize;
}

/// Leftmost occurrence of the lowest-numbered (highest-priority) rule.
pub struct LeftmostPriority;

impl Named for LeftmostPriority {
    fn name(&self) -> &'static str {
        "leftmost"
    }
}

impl RewriteStrategy for LeftmostPriority {
    fn select(&self, _word: &Word, matches: &[RuleMatch], _step: usize) -> usize {
        (0..matches.len())
            .min_by_key(|&i| (matches[i].rule, matches[i].position))
            .expect("non-empty matches")
    }
}

/// Rightmost occurrence of any rule; ties go to the higher-numbered rule.
pub struct Rightmost;

impl Named for Rightmost {
    fn name(&self) -> &'static str {
        "rightmost"
    }
}

impl RewriteStrategy for Rightmost {
    fn select(&self, _word: &Word, matches: &[RuleMatch], _step: usize) -> usize {
        (0..matches.len())
            .max_by_key(|&i| (matches[i].position, matches[i].rule))
            .expect("non-empty matches")
    }
}

/// Pseudo-random choice, deterministic in (seed, word, step).
pub struct RandomOrder {
    pub seed: u64,
}

impl Named for RandomOrder {
    fn name(&self) -> &'static str {
        "random"
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl RewriteStrategy for RandomOrder {
    fn select(&self, word: &Word, matches: &[RuleMatch], step: usize) -> usize {
        let mut h = splitmix64(self.seed ^ (step as u64).rotate_left(17));
        for &b in word.as_bytes() {
            h = splitmix64(h ^ b as u64);
        }
        (h % matches.len() as u64) as usize
    }
}

pub fn rewrite_strategies(seed: u64) -> Registry<dyn RewriteStrategy> {
    let mut reg: Registry<dyn RewriteStrategy> = Registry::new("rewrite strategy");
    reg.register(Box::new(LeftmostPriority))
        .register(Box::new(Rightmost))
        .register(Box::new(RandomOrder { seed }));
    reg
}

/// Rules over an alphabet whose replacements all lie strictly below their
/// patterns in the degree / misordering-index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
}

impl ReductionSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self> {
        for rule in &rules {
            for (m, _) in rule.replacement.terms() {
                if alphabet.compare(m, &rule.pattern) != WordOrdering::Less {
                    return Err(Error::IncompatibleRule {
                        pattern: rule.pattern.to_string(),
                        monomial: m.to_string(),
                    });
                }
            }
        }
        Ok(ReductionSystem { alphabet, rules })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn matches(&self, w: &Word) -> Vec<RuleMatch> {
        let mut out = Vec::new();
        for (rule, r) in self.rules.iter().enumerate() {
            for position in w.occurrences(&r.pattern) {
                out.push(RuleMatch { rule, position });
            }
        }
        out
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| !w.contains(&r.pattern))
    }

    /// Replaces the matched subword of `w` by the rule's replacement.
    pub fn apply(&self, w: &Word, m: RuleMatch) -> NcPoly {
        let rule = &self.rules[m.rule];
        let left = w.slice(0, m.position);
        let right = w.slice(m.position + rule.pattern.len(), w.len());
        rule.replacement.sandwich(&left, &right)
    }

    pub fn reduce(&self, p: &NcPoly) -> Result<NcPoly> {
        self.reduce_with(p, &LeftmostPriority)
    }

    /// Rewrites every reducible monomial once per pass until none remains.
    pub fn reduce_with(&self, p: &NcPoly, strategy: &dyn RewriteStrategy) -> Result<NcPoly> {
        let degree = p.degree();
        let bound = 10 * (degree + 1) * (degree + 1);
        let mut done = NcPoly::zero();
        let mut pending: BTreeMap<Word, Coeff> = p.clone().into_terms().collect();
        let mut passes = 0usize;
        let mut step = 0usize;
        while !pending.is_empty() {
            passes += 1;
            if passes > bound {
                return Err(Error::NonTerminating { passes: bound });
            }
            let mut next = NcPoly::zero();
            for (w, c) in std::mem::take(&mut pending) {
                let found = self.matches(&w);
                if found.is_empty() {
                    done.add_term(w, c);
                    continue;
                }
                let pick = found[strategy.select(&w, &found, step)];
                step += 1;
                for (m, a) in self.apply(&w, pick).into_terms() {
                    next.add_term(m, &a * &c);
                }
            }
            pending = next.into_terms().collect();
        }
        Ok(done)
    }

    /// Reduces every one-step rewrite of `overlap` and compares the results.
    pub fn check_overlap(&self, overlap: &Word) -> Result<OverlapCheck> {
        let found = self.matches(overlap);
        if found.len() < 2 {
            return Err(Error::NoOverlap(overlap.to_string()));
        }
        let normal_forms = found
            .iter()
            .map(|&m| self.reduce(&self.apply(overlap, m)))
            .collect::<Result<Vec<_>>>()?;
        let witness = normal_forms[1..]
            .iter()
            .map(|nf| &normal_forms[0] - nf)
            .find(|d| !d.is_zero())
            .unwrap_or_default();
        Ok(OverlapCheck {
            resolvable: witness.is_zero(),
            witness,
            normal_forms,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapCheck {
    pub resolvable: bool,
    /// Difference of two disagreeing normal forms; zero iff resolvable.
    pub witness: NcPoly,
    pub normal_forms: Vec<NcPoly>,
}

/// Normal form of `p` under `system` (leftmost-priority rewriting).
pub fn reduce(p: &NcPoly, system: &ReductionSystem) -> Result<NcPoly> {
    system.reduce(p)
}

pub fn check_overlap_resolvable(system: &ReductionSystem, overlap: &Word) -> Result<OverlapCheck> {
    system.check_overlap(overlap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    // VW -> WV would raise the misordering index.
    #[test]
    fn incompatible_rule_rejected() {
        let bad = Rule::new(w("VW"), NcPoly::word(w("WV")));
        assert!(matches!(
            ReductionSystem::new(Alphabet::torus(), vec![bad]),
            Err(Error::IncompatibleRule { .. })
        ));
    }

    #[test]
    fn sorting_system_normal_form() {
        // WV -> VW sorts letters; every word reduces to V^a W^b.
        let sys = ReductionSystem::new(
            Alphabet::torus(),
            vec![Rule::new(w("WV"), NcPoly::word(w("VW")))],
        )
        .unwrap();
        let p = NcPoly::word(w("WVWVV"));
        for strat in rewrite_strategies(7).iter() {
            assert_eq!(
                sys.reduce_with(&p, strat).unwrap(),
                NcPoly::word(w("VVVWW"))
            );
        }
        assert!(matches!(
            sys.check_overlap(&w("WV")),
            Err(Error::NoOverlap(_))
        ));
        let ok = sys.check_overlap(&w("WVWV")).unwrap();
        assert!(ok.resolvable);
    }

    #[test]
    fn strategies_registered() {
        let reg = rewrite_strategies(1);
        assert_eq!(reg.names(), vec!["leftmost", "rightmost", "random"]);
        let matches = [
            RuleMatch {
                rule: 1,
                position: 0,
            },
            RuleMatch {
                rule: 0,
                position: 2,
            },
            RuleMatch {
                rule: 0,
                position: 1,
            },
        ];
        let word = w("WWWW");
        assert_eq!(reg.get("leftmost").unwrap().select(&word, &matches, 0), 2);
        assert_eq!(reg.get("rightmost").unwrap().select(&word, &matches, 0), 1);
        let r = reg.get("random").unwrap();
        assert_eq!(r.select(&word, &matches, 3), r.select(&word, &matches, 3));
    }
}

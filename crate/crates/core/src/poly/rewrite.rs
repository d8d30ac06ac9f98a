//! Reduction modulo a set of rules `lead -> tail`.
//!
//! Every rule has a tail strictly below its lead in the monomial order, so any
//! reduction sequence terminates. When the leads are pairwise coprime the rule
//! set is a Groebner basis and the normal form does not depend on the order in
//! which rules are applied.

use super::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Monomial,
    pub tail: Poly,
}

impl RewriteRule {
    /// Builds the rule from a relation `rel = 0`, normalising its leading coefficient.
    pub fn from_relation(rel: &Poly) -> Option<RewriteRule> {
        let (lead, c) = rel.leading_term()?;
        if lead.is_one() {
            return None;
        }
        let inv = c.inv()?;
        let mut tail = rel.scale(&-inv);
        tail.add_term(lead.clone(), &num_traits::One::one());
        Some(RewriteRule {
            lead: lead.clone(),
            tail,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewriteStrategy {
    /// Reduce the largest reducible term first, applying the first matching rule.
    #[default]
    GreatestFirst,
    /// Reduce the smallest reducible term first, applying the last matching rule.
    LeastFirst,
}

#[derive(Debug, Clone, Default)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<RewriteRule>) -> Self {
        RewriteSystem { rules }
    }

    pub fn from_relations(relations: &[Poly]) -> Self {
        RewriteSystem {
            rules: relations.iter().filter_map(RewriteRule::from_relation).collect(),
        }
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn leads_pairwise_coprime(&self) -> bool {
        self.rules.iter().enumerate().all(|(a, ra)| {
            self.rules[a + 1..]
                .iter()
                .all(|rb| ra.lead.vars().all(|v| rb.lead.degree_in(v) == 0))
        })
    }

    pub fn is_reduced(&self, m: &Monomial) -> bool {
        self.rules.iter().all(|r| !r.lead.divides(m))
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.normal_form_with(p, RewriteStrategy::GreatestFirst)
    }

    pub fn normal_form_with(&self, p: &Poly, strategy: RewriteStrategy) -> Poly {
        match strategy {
            RewriteStrategy::GreatestFirst => self.reduce_greatest(p),
            RewriteStrategy::LeastFirst => self.reduce_least(p),
        }
    }

    fn reduce_greatest(&self, p: &Poly) -> Poly {
        let mut work = p.clone();
        let mut out = Poly::zero();
        while let Some((m, c)) = work.pop_last() {
            match self.rules.iter().find(|r| r.lead.divides(&m)) {
                Some(rule) => {
                    let shift = rule.lead.quotient_of(&m).expect("lead divides term");
                    work.add_scaled(&rule.tail, &c, &shift);
                }
                None => out.add_term(m, &c),
            }
        }
        out
    }

    fn reduce_least(&self, p: &Poly) -> Poly {
        let mut cur = p.clone();
        loop {
            let step = cur.terms().find_map(|(m, c)| {
                self.rules
                    .iter()
                    .rev()
                    .find(|r| r.lead.divides(m))
                    .map(|r| (m.clone(), c.clone(), r))
            });
            let Some((m, c, rule)) = step else {
                return cur;
            };
            let shift = rule.lead.quotient_of(&m).expect("lead divides term");
            cur.add_term(m, &-&c);
            cur.add_scaled(&rule.tail, &c, &shift);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn sys(rels: &[&str]) -> RewriteSystem {
        RewriteSystem::from_relations(&rels.iter().map(|s| parse_poly(s).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn reduces_a_sum_of_squares() {
        let s = sys(&["T0_1^2 + T1_1^2 + T2_1^2"]);
        assert!(s.leads_pairwise_coprime());
        let nf = s.normal_form(&parse_poly("T2_1^3").unwrap());
        assert_eq!(nf, parse_poly("-T2_1*T1_1^2 - T2_1*T0_1^2").unwrap());
        let both = s.normal_form_with(&parse_poly("T2_1^4 + T2_1^2*T1_1").unwrap(), RewriteStrategy::LeastFirst);
        assert_eq!(both, s.normal_form(&parse_poly("T2_1^4 + T2_1^2*T1_1").unwrap()));
        assert!(s.normal_form(&parse_poly("T0_1^2 + T1_1^2 + T2_1^2").unwrap()).is_zero());
    }

    #[test]
    fn rule_tail_is_below_lead() {
        let s = sys(&["T1_1*T1_2 - T0_1^3 + 1", "T2_1^2 - T1_1*T1_2 - 2"]);
        for r in s.rules() {
            assert!(r.tail.terms().all(|(m, _)| *m < r.lead));
        }
        assert!(s.leads_pairwise_coprime());
    }
}

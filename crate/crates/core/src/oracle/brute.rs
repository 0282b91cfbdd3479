use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{class_sets, is_tautology, models, Formula, ModelSet, Signature, Theory, MAX_ATOMS};

/// Remainders by exhaustive search: every theory inside `t` (every
/// denotable model set containing `t`'s) that leaves out each
/// non-tautological member of `g`, keeping the maximal ones.
pub fn brute_remainders(t: &Theory, g: &BTreeSet<Formula>, sig: &Signature) -> Result<Vec<ModelSet>> {
    if sig.len() > MAX_ATOMS {
        return Err(Error::CapExceeded { atoms: sig.len(), cap: MAX_ATOMS });
    }
    let targets: Vec<ModelSet> =
        g.iter().filter(|f| !is_tautology(f, sig)).map(|f| models(f, sig)).collect();
    if targets.is_empty() {
        return Ok(Vec::new());
    }
    let k = t.models();
    let mut candidates: Vec<ModelSet> = class_sets(sig)
        .into_iter()
        .filter(|r| k.is_subset(*r))
        .filter(|r| targets.iter().all(|m| !r.is_subset(*m)))
        .collect();
    candidates.sort_by_key(|r| (r.len(), r.bits()));
    let mut kept: Vec<ModelSet> = Vec::new();
    for r in candidates {
        if !kept.iter().any(|s| s.is_subset(r)) {
            kept.push(r);
        }
    }
    kept.sort();
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Fragment};

    #[test]
    fn package_remainders() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        let f = |t: &str| parse_formula(t, &s).unwrap();
        let k = Theory::closure(&[f("p1"), f("p2")], &s);
        let xi = brute_remainders(&k, &[f("p1"), f("p2")].into(), &s).unwrap();
        let want: Vec<ModelSet> = vec![models(&f("p1 | p2"), &s), models(&f("p1 & p2 | ~p1 & ~p2"), &s)];
        let mut want = want;
        want.sort();
        assert_eq!(xi, want);
        let meet = xi.iter().fold(ModelSet::EMPTY, |a, r| a.union(*r));
        assert_eq!(meet, ModelSet::full(&s));
        assert!(brute_remainders(&k, &[f("p1 | ~p1")].into(), &s).unwrap().is_empty());
    }
}

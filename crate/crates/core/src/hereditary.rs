//! Closure of classes under passing to subspaces.
//!
//! Every subspace arises from repeated one-point deletions, so a class is
//! closed on a finite universe exactly when single deletions never leave it.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{ClassId, ClassifyError};
use crate::gen::enumerate_spaces;
use crate::space::Space;

/// Subsets are tracked as bitmasks, which bounds the instance size.
pub const SUBSET_LIMIT: usize = 20;
/// Largest space accepted by [`is_hereditary_instance_exhaustive`].
pub const FULL_ENUMERATION_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HereditaryError {
    #[error("the space has a single point")]
    SingletonSpace,
    #[error("the space is not in class {0}")]
    NotInClass(ClassId),
    #[error("{size} points exceed the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("budget exhausted after {examined} spaces without a decision")]
    BudgetExhausted { examined: usize },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// A member of a class together with a subspace outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub space: Space,
    pub subset: Vec<String>,
}

/// Outcome of checking one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceVerdict {
    pub holds: bool,
    /// Minimal violating subset: outside the class, while each of its
    /// one-point deletions with at least two points is inside.
    pub witness: Option<Vec<String>>,
    pub subspaces_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub class: ClassId,
    pub max_n: usize,
    pub holds: bool,
    pub spaces_checked: usize,
    pub members_checked: usize,
    pub first_violation: Option<Counterexample>,
}

/// The `|X|` subspaces obtained by removing one point each, in point order.
pub fn one_point_deletions(space: &Space) -> Result<Vec<Space>, HereditaryError> {
    let n = space.len();
    if n < 2 {
        return Err(HereditaryError::SingletonSpace);
    }
    Ok((0..n)
        .map(|skip| {
            let keep: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
            space.restrict_indices(&keep)
        })
        .collect())
}

fn indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

fn subset_names(space: &Space, mask: u32) -> Vec<String> {
    indices(mask, space.len())
        .into_iter()
        .map(|i| space.point(i).to_string())
        .collect()
}

struct Closure<'a> {
    space: &'a Space,
    class: ClassId,
    memo: HashMap<u32, bool>,
}

impl Closure<'_> {
    fn member(&mut self, mask: u32) -> Result<bool, ClassifyError> {
        if let Some(&m) = self.memo.get(&mask) {
            return Ok(m);
        }
        let sub = self.space.restrict_indices(&indices(mask, self.space.len()));
        let m = self.class.contains(&sub)?;
        self.memo.insert(mask, m);
        Ok(m)
    }

    fn deletions(&self, mask: u32) -> impl Iterator<Item = u32> + '_ {
        let n = self.space.len();
        (0..n)
            .filter(move |i| mask & (1 << i) != 0 && mask.count_ones() > 2)
            .map(move |i| mask & !(1 << i))
    }

    /// Walks down from a non-member until every deletion is a member.
    fn minimize(&mut self, mut mask: u32) -> Result<u32, ClassifyError> {
        'outer: loop {
            let next: Vec<u32> = self.deletions(mask).collect();
            for d in next {
                if !self.member(d)? {
                    mask = d;
                    continue 'outer;
                }
            }
            return Ok(mask);
        }
    }
}

fn precheck(space: &Space, class: ClassId, limit: usize) -> Result<(), HereditaryError> {
    if space.len() < 2 {
        return Err(HereditaryError::SingletonSpace);
    }
    if space.len() > limit {
        return Err(HereditaryError::TooLarge {
            size: space.len(),
            limit,
        });
    }
    if !class.contains(space)? {
        return Err(HereditaryError::NotInClass(class));
    }
    Ok(())
}

/// Whether every subspace with at least two points stays in `class`,
/// decided by downward closure under one-point deletions.
pub fn is_hereditary_instance(space: &Space, class: ClassId) -> Result<InstanceVerdict, HereditaryError> {
    precheck(space, class, SUBSET_LIMIT)?;
    let full = (1u32 << space.len()) - 1;
    let mut closure = Closure {
        space,
        class,
        memo: HashMap::from([(full, true)]),
    };
    // Only members are expanded: below a non-member the search already failed.
    let mut stack = vec![full];
    let mut expanded = std::collections::HashSet::from([full]);
    while let Some(mask) = stack.pop() {
        let next: Vec<u32> = closure.deletions(mask).collect();
        for d in next {
            if !expanded.insert(d) {
                continue;
            }
            if !closure.member(d)? {
                let min = closure.minimize(d)?;
                return Ok(InstanceVerdict {
                    holds: false,
                    witness: Some(subset_names(space, min)),
                    subspaces_checked: closure.memo.len(),
                });
            }
            stack.push(d);
        }
    }
    Ok(InstanceVerdict {
        holds: true,
        witness: None,
        subspaces_checked: closure.memo.len(),
    })
}

/// Cross-check of [`is_hereditary_instance`] that tests every subset directly.
pub fn is_hereditary_instance_exhaustive(space: &Space, class: ClassId) -> Result<InstanceVerdict, HereditaryError> {
    precheck(space, class, FULL_ENUMERATION_LIMIT)?;
    let n = space.len();
    let mut closure = Closure {
        space,
        class,
        memo: HashMap::new(),
    };
    let mut masks: Vec<u32> = (1..(1u32 << n)).filter(|m| m.count_ones() >= 2).collect();
    // Smallest subsets first, so the first failure is already minimal.
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        if !closure.member(mask)? {
            let min = closure.minimize(mask)?;
            return Ok(InstanceVerdict {
                holds: false,
                witness: Some(subset_names(space, min)),
                subspaces_checked: closure.memo.len(),
            });
        }
    }
    Ok(InstanceVerdict {
        holds: true,
        witness: None,
        subspaces_checked: closure.memo.len(),
    })
}

/// Membership of `space`, and for members the first one-point deletion that
/// leaves the class.
fn violation(space: &Space, class: ClassId) -> Result<(bool, Option<Counterexample>), ClassifyError> {
    if !class.contains(space)? {
        return Ok((false, None));
    }
    if space.len() > 2 {
        for sub in one_point_deletions(space).expect("at least two points") {
            if !class.contains(&sub)? {
                let subset = sub.points().to_vec();
                return Ok((
                    true,
                    Some(Counterexample {
                        space: space.clone(),
                        subset,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Checks deletion closure for every enumerated member with at most `max_n`
/// points; enumeration covers every space up to weak similarity.
pub fn hereditary_verify(class: ClassId, max_n: usize) -> Result<VerifyReport, HereditaryError> {
    let mut report = VerifyReport {
        class,
        max_n,
        holds: true,
        spaces_checked: 0,
        members_checked: 0,
        first_violation: None,
    };
    for n in 2..=max_n {
        let spaces = enumerate_spaces(n);
        let results: Vec<(bool, Option<Counterexample>)> = spaces
            .par_iter()
            .map(|s| violation(s, class))
            .collect::<Result<_, _>>()?;
        for (member, bad) in results {
            report.spaces_checked += 1;
            report.members_checked += usize::from(member);
            if report.first_violation.is_none() {
                if let Some(c) = bad {
                    report.holds = false;
                    report.first_violation = Some(c);
                }
            }
        }
    }
    Ok(report)
}

/// Searches enumerated spaces with at most `max_n` points, smallest first,
/// for a member with a subspace outside the class. `budget` caps the number
/// of spaces examined; running out is an error distinct from `Ok(None)`.
pub fn hereditary_counterexample_search(
    class: ClassId,
    max_n: usize,
    budget: usize,
) -> Result<Option<Counterexample>, HereditaryError> {
    let mut examined = 0usize;
    for n in 2..=max_n {
        let spaces = enumerate_spaces(n);
        let room = budget - examined;
        let take = spaces.len().min(room);
        let found = spaces[..take]
            .par_iter()
            .map(|s| violation(s, class))
            .find_map_first(|r| match r {
                Ok((_, Some(c))) => Some(Ok(c)),
                Err(e) => Some(Err(e)),
                _ => None,
            })
            .transpose()?;
        if found.is_some() {
            return Ok(found);
        }
        examined += take;
        if take < spaces.len() {
            return Err(HereditaryError::BudgetExhausted { examined });
        }
    }
    Ok(None)
}

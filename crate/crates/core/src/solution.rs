use crate::prims::Tour;

/// Tour plus guess bookkeeping from one solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub tour: Tour,
    pub guesses_evaluated: u64,
    pub guesses_skipped: u64,
}

impl Solution {
    pub fn single(tour: Tour) -> Self {
        Solution { tour, guesses_evaluated: 1, guesses_skipped: 0 }
    }
}

impl Solution {
    /// Fold per-guess outcomes: skippable errors count as skipped, any other
    /// error aborts, and the best tour wins by (weight, order).
    pub fn best_of<I>(outcomes: I) -> crate::Result<Self>
    where
        I: IntoIterator<Item = crate::Result<Tour>>,
    {
        let mut best: Option<Tour> = None;
        let (mut evaluated, mut skipped) = (0, 0);
        for r in outcomes {
            evaluated += 1;
            match r {
                Ok(t) => {
                    if best.as_ref().is_none_or(|b| t.better_than(b)) {
                        best = Some(t);
                    }
                }
                Err(e) if e.is_skippable() => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        let tour = best.ok_or_else(|| crate::Error::Internal(format!("all {evaluated} guesses were skipped")))?;
        Ok(Solution { tour, guesses_evaluated: evaluated, guesses_skipped: skipped })
    }
}

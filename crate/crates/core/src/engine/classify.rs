use super::LinearParam;
use crate::numerics::Number;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerClassification {
    Regular,
    /// Constant part `-threshold`, nonzero slope.
    Singular { threshold: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerClasses {
    pub kinds: Vec<LowerClassification>,
    /// Singular thresholds in ascending order.
    pub thresholds: Vec<usize>,
}

impl LowerClasses {
    pub fn singular_count(&self) -> usize {
        self.thresholds.len()
    }

    pub fn has_coincident_thresholds(&self) -> bool {
        self.thresholds.windows(2).any(|w| w[0] == w[1])
    }
}

/// Tags each lower parameter as regular or singular.
pub fn classify_lower<T: Number>(lower: &[LinearParam<T>]) -> Result<LowerClasses> {
    let mut kinds = Vec::with_capacity(lower.len());
    let mut thresholds = Vec::new();
    for (index, beta) in lower.iter().enumerate() {
        let n = beta
            .constant
            .to_integer()
            .filter(|b| *b <= 0)
            .and_then(|b| (-b).to_usize());
        match n {
            None => kinds.push(LowerClassification::Regular),
            Some(_) if beta.slope.is_zero() => return Err(Error::UnresolvablePole { index }),
            Some(threshold) => {
                kinds.push(LowerClassification::Singular { threshold });
                thresholds.push(threshold);
            }
        }
    }
    thresholds.sort_unstable();
    Ok(LowerClasses { kinds, thresholds })
}

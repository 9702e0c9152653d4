use crate::error::{Error, Result};
use crate::freewords::{Letter, Word};

/// `2, 4, ..., 100`.
pub fn default_coefficients() -> Vec<u32> {
    (1..=50).map(|i| 2 * i).collect()
}

/// For each `j` the positive relator `a b^{c_1 j} a b^{c_2 j} ... a b^{c_B j}`.
///
/// `j_values` are deduplicated and sorted; coefficients must be positive,
/// even and strictly increasing.
pub fn make_family(j_values: &[u32], coefficients: &[u32]) -> Result<Vec<Word>> {
    if coefficients.is_empty() {
        return Err(Error::InvalidArgument("no coefficients given".into()));
    }
    if let Some(c) = coefficients.iter().find(|&&c| c == 0 || c % 2 == 1) {
        return Err(Error::InvalidArgument(format!(
            "coefficient {c} is not a positive even integer"
        )));
    }
    if coefficients.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "coefficients must be strictly increasing".into(),
        ));
    }
    let mut js = j_values.to_vec();
    js.sort_unstable();
    js.dedup();
    if js.is_empty() || js[0] == 0 {
        return Err(Error::InvalidArgument("j values must be >= 1".into()));
    }
    js.into_iter()
        .map(|j| {
            let letters = coefficients.iter().flat_map(|&c| {
                std::iter::once(Letter::gen(0))
                    .chain(std::iter::repeat(Letter::gen(1)).take((c * j) as usize))
            });
            Word::reduce(letters, 2)
        })
        .collect()
}

pub mod check;
pub mod simulate;
pub mod tabulate;
pub mod validate;

use halfspace_core::symfunc::ModelParams;
use num_rational::BigRational;

use crate::error::LabError;
use crate::rational;

/// The default alphabet written out, so the embedded config is complete.
pub(crate) fn fill_alphabet(a: &mut Vec<String>, n: usize) {
    if a.is_empty() {
        *a = vec!["1/2".to_string(); n];
    }
}

/// Exact `(t, a_1..a_n)`; an empty alphabet means every `a_k = 1/2`.
pub(crate) fn exact_params(n: usize, t: &str, a: &[String]) -> Result<ModelParams<BigRational>, LabError> {
    let t = rational::parse(t)?;
    let a: Vec<BigRational> = if a.is_empty() {
        vec![BigRational::new(1.into(), 2.into()); n]
    } else if a.len() == n {
        a.iter().map(|s| rational::parse(s)).collect::<Result<_, _>>()?
    } else {
        return Err(LabError::Usage(format!("need {n} alphabet entries, got {}", a.len())));
    };
    ModelParams::hall_littlewood(t, a).map_err(LabError::domain)
}

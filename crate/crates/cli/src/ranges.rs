use critqfi::analysis::linear_grid;

use crate::args::Model;
use crate::error::CliError;

/// Largest spin count accepted on the command line.
pub const MAX_SPINS: usize = 4000;

fn number(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("not a number: `{s}`")))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("not a finite number: `{s}`")));
    }
    Ok(v)
}

/// `start:stop:count`, `start:stop` (with `default_count`), or `a,b,c`.
pub fn parse_values(s: &str, default_count: usize) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(number).collect(),
        [a, b] => linear_grid(number(a)?, number(b)?, default_count).map_err(CliError::usage),
        [a, b, c] => {
            let count = c
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad point count `{c}` in `{s}`")))?;
            linear_grid(number(a)?, number(b)?, count).map_err(CliError::usage)
        }
        _ => Err(CliError::Usage(format!("bad range `{s}`"))),
    }
}

fn size(s: &str) -> Result<usize, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("not a spin count: `{s}`")))
}

pub fn check_size(model: Model, n: usize) -> Result<(), CliError> {
    let ok = match model {
        Model::Tfim => n >= 2 && n % 2 == 0 && n <= MAX_SPINS,
        Model::Lmg => (2..=MAX_SPINS).contains(&n),
        Model::Lz | Model::LmgThermo => true,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "n = {n} is not valid for {model:?} (tfim: even, 2..={MAX_SPINS}; lmg: 2..={MAX_SPINS})"
        )))
    }
}

/// Size lists: `a,b,c`; `start:stop` for every valid size; or
/// `start:stop:count` evenly spaced and rounded to valid sizes.
pub fn parse_sizes(s: &str, model: Model) -> Result<Vec<usize>, CliError> {
    let step = if model == Model::Tfim { 2 } else { 1 };
    let parts: Vec<&str> = s.split(':').collect();
    let sizes: Vec<usize> = match parts.as_slice() {
        [single] => single.split(',').map(size).collect::<Result<_, _>>()?,
        [a, b] => {
            let (a, b) = (size(a)?, size(b)?);
            let first = a + (a % step);
            (first..=b).step_by(step).collect()
        }
        [a, b, c] => {
            let mut out: Vec<usize> = parse_values(&format!("{}:{}:{}", size(a)?, size(b)?, c), 0)?
                .into_iter()
                .map(|x| {
                    let n = x.round() as usize;
                    n - (n % step)
                })
                .collect();
            out.dedup();
            out
        }
        _ => return Err(CliError::Usage(format!("bad size range `{s}`"))),
    };
    if sizes.is_empty() {
        return Err(CliError::Usage(format!("size range `{s}` is empty")));
    }
    for &n in &sizes {
        check_size(model, n)?;
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_ranges() {
        assert_eq!(parse_values("0:1:3", 101).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_values("0:1", 5).unwrap().len(), 5);
        assert_eq!(parse_values("0,0.05, 0.1", 5).unwrap(), vec![0.0, 0.05, 0.1]);
        assert_eq!(parse_values("2", 5).unwrap(), vec![2.0]);
        assert!(parse_values("0:1:x", 5).is_err());
        assert!(parse_values("a", 5).is_err());
        assert!(parse_values("0:1:2:3", 5).is_err());
        assert!(parse_values("inf", 5).is_err());
    }

    #[test]
    fn size_ranges() {
        assert_eq!(parse_sizes("4:10", Model::Tfim).unwrap(), vec![4, 6, 8, 10]);
        assert_eq!(parse_sizes("5:8", Model::Tfim).unwrap(), vec![6, 8]);
        assert_eq!(parse_sizes("5:8", Model::Lmg).unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(parse_sizes("10,20,40", Model::Lmg).unwrap(), vec![10, 20, 40]);
        assert_eq!(parse_sizes("10:200:5", Model::Lmg).unwrap(), vec![10, 58, 105, 153, 200]);
        assert_eq!(parse_sizes("4:64:4", Model::Tfim).unwrap(), vec![4, 24, 44, 64]);
        assert!(parse_sizes("3", Model::Tfim).is_err());
        assert!(parse_sizes("9:8", Model::Lmg).is_err());
        assert!(parse_sizes("1", Model::Lmg).is_err());
    }
}

use crate::error::{invalid, Result};

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite()) {
        return Err(invalid(format!("grid bounds must be finite, got {start}:{stop}")));
    }
    match count {
        0 => Err(invalid("grid needs at least one point")),
        1 => Ok(vec![start]),
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
                .collect())
        }
    }
}

/// Log-spaced points from `start` to `stop` inclusive with `per_decade`
/// intervals per factor of ten.
pub fn log_grid(start: f64, stop: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(start > 0.0 && stop > start && stop.is_finite()) {
        return Err(invalid(format!("log grid needs 0 < start < stop, got {start}:{stop}")));
    }
    if per_decade == 0 {
        return Err(invalid("log grid needs at least one point per decade"));
    }
    let decades = (stop / start).log10();
    let intervals = ((decades * per_decade as f64) - 1e-9).ceil().max(1.0) as usize;
    let (a, b) = (start.log10(), stop.log10());
    Ok(linear_grid(a, b, intervals + 1)?
        .into_iter()
        .enumerate()
        .map(|(i, e)| match i {
            0 => start,
            i if i == intervals => stop,
            _ => 10f64.powf(e),
        })
        .collect())
}

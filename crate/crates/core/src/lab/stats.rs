/// Mean and sample standard deviation, computed on offsets from the first
/// value so that a constant column has exactly zero spread.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let Some(&origin) = values.first() else {
        return (f64::NAN, f64::NAN);
    };
    let n = values.len() as f64;
    let shift = values.iter().map(|v| v - origin).sum::<f64>() / n;
    let mean = origin + shift;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - origin - shift).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

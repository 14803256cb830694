use std::fmt::Write;

use crate::ls::variable_count;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchTable {
    pub rows: Vec<(u64, u128)>,
    /// Least-squares slope of `ln(count)` against `ln(s)`.
    pub slope: f64,
}

impl BenchTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,variables\n");
        for (s, c) in &self.rows {
            writeln!(out, "{s},{c}").expect("writing to a string");
        }
        out
    }

    pub fn slope_text(&self) -> String {
        format!("{:.6}", self.slope)
    }
}

/// Variable counts over `sizes` with the fitted log-log slope.
pub fn bench_vars(r: u32, theta: u32, sizes: &[u64]) -> Result<BenchTable, String> {
    if sizes.len() < 4 {
        return Err(format!("need at least 4 sizes, got {}", sizes.len()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
        return Err("sizes must be positive and ascending".into());
    }
    if theta == 0 {
        return Err("theta must be positive".into());
    }
    let rows: Vec<(u64, u128)> = sizes.iter().map(|&s| (s, variable_count(s, r, theta))).collect();
    let pts: Vec<(f64, f64)> = rows.iter().map(|&(s, c)| ((s as f64).ln(), (c as f64).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(BenchTable { rows, slope: sxy / sxx })
}

/// Parses `a,b,c` lists; `a,b,...,z` continues the progression from `a`
/// to `b` (geometric when `b` is a multiple of `a`, else arithmetic) up
/// to `z`.
pub fn parse_sizes(text: &str) -> Result<Vec<u64>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<u64>().map_err(|_| format!("bad size {p:?}"));
    let Some(dots) = parts.iter().position(|&p| p == "...") else {
        return parts.into_iter().map(num).collect();
    };
    if dots < 2 || dots + 2 != parts.len() {
        return Err("expected a,b,...,z".into());
    }
    let head: Vec<u64> = parts[..dots].iter().map(|p| num(p)).collect::<Result<_, _>>()?;
    let last = num(parts[dots + 1])?;
    let (a, b) = (head[dots - 2], head[dots - 1]);
    if b <= a {
        return Err("progression must increase".into());
    }
    let next: Box<dyn Fn(u64) -> Option<u64>> = if a > 0 && b % a == 0 {
        let ratio = b / a;
        Box::new(move |x| x.checked_mul(ratio))
    } else {
        let step = b - a;
        Box::new(move |x| x.checked_add(step))
    };
    let mut out = head;
    let mut x = b;
    while let Some(y) = next(x).filter(|&y| y <= last) {
        out.push(y);
        x = y;
    }
    if x != last {
        return Err(format!("{last} is not in the progression"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<u64> {
        parse_sizes("64,128,...,4096").unwrap()
    }

    #[test]
    fn size_lists() {
        assert_eq!(grid(), vec![64, 128, 256, 512, 1024, 2048, 4096]);
        assert_eq!(parse_sizes("10,20,...,40").unwrap(), vec![10, 20, 40]);
        assert_eq!(parse_sizes("10,15,...,30").unwrap(), vec![10, 15, 20, 25, 30]);
        assert_eq!(parse_sizes("3,5,9").unwrap(), vec![3, 5, 9]);
        assert!(parse_sizes("64,128,...,1000").is_err());
        assert!(parse_sizes("10,20,...,50").is_err());
        assert!(parse_sizes("1,x").is_err());
    }

    #[test]
    fn slopes() {
        let t8 = bench_vars(2, 8, &grid()).unwrap();
        assert!(t8.slope <= 1.35, "{}", t8.slope);
        let t1 = bench_vars(2, 1, &grid()).unwrap();
        assert!((t1.slope - 3.0).abs() < 0.05, "{}", t1.slope);
        let mut prev = f64::INFINITY;
        for theta in [1, 2, 4, 8, 16] {
            let s = bench_vars(2, theta, &grid()).unwrap().slope;
            assert!(s <= prev + 1e-12);
            prev = s;
        }
    }

    #[test]
    fn csv_format() {
        let t = bench_vars(2, 8, &[2, 4, 8, 16]).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("s,variables\n2,"));
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(t.slope_text().split('.').nth(1).unwrap().len(), 6);
        assert!(bench_vars(2, 8, &[2, 4, 8]).is_err());
    }
}

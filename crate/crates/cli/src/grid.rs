use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub const MAX_POINTS: usize = 100_000;

/// `START:STOP:COUNT`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected START:STOP:COUNT, got `{s}`"));
        };
        let num = |v: &str, what: &str| -> Result<f64, String> {
            let x: f64 = v.trim().parse().map_err(|_| format!("{what} `{v}` is not a number"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("{what} must be finite"))
            }
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("COUNT `{count}` is not a positive integer"))?;
        if count == 0 || count > MAX_POINTS {
            return Err(format!("COUNT must lie in 1..={MAX_POINTS}, got {count}"));
        }
        Ok(Grid {
            start: num(start, "START")?,
            stop: num(stop, "STOP")?,
            count,
        })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_spans_endpoints() {
        let g: Grid = "0.1:0.9:5".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], 0.1);
        assert_eq!(p[4], 0.9);
        assert!((p[2] - 0.5).abs() < 1e-15);
        assert_eq!("0.3:0.3:1".parse::<Grid>().unwrap().points(), vec![0.3]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["0:1", "0:1:0", "0:1:100001", "a:1:3", "0:inf:3", "0:1:-2", "0:1:2:3"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}

use std::str::FromStr;

use ratlimit::numerics::geometric_radii;

/// `start:end:count`, geometric spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiiSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Default for RadiiSpec {
    fn default() -> Self {
        Self {
            start: 1e-1,
            end: 1e-6,
            count: 11,
        }
    }
}

impl RadiiSpec {
    pub fn radii(&self) -> Vec<f64> {
        geometric_radii(self.start, self.end, self.count)
    }
}

impl FromStr for RadiiSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, count] = parts[..] else {
            return Err(format!("expected start:end:count, got {s:?}"));
        };
        let spec = Self {
            start: parse_positive(start)?,
            end: parse_positive(end)?,
            count: count.parse().map_err(|_| format!("bad shell count {count:?}"))?,
        };
        if spec.end >= spec.start || spec.count < 3 {
            return Err("radii must shrink (start > end) over at least 3 shells".to_owned());
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Geometric,
    Linear,
}

/// `start:end:spacing:count` for the path parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TGrid {
    pub start: f64,
    pub end: f64,
    pub spacing: Spacing,
    pub count: usize,
}

impl Default for TGrid {
    fn default() -> Self {
        Self {
            start: 1.0,
            end: 1e-6,
            spacing: Spacing::Geometric,
            count: 13,
        }
    }
}

impl TGrid {
    pub fn values(&self) -> Vec<f64> {
        match (self.spacing, self.count) {
            (_, 0) => Vec::new(),
            (_, 1) => vec![self.start],
            (Spacing::Geometric, n) => {
                let ratio = (self.end / self.start).ln() / (n - 1) as f64;
                (0..n)
                    .map(|k| {
                        if k == n - 1 {
                            self.end
                        } else {
                            self.start * (ratio * k as f64).exp()
                        }
                    })
                    .collect()
            }
            (Spacing::Linear, n) => {
                let step = (self.end - self.start) / (n - 1) as f64;
                (0..n)
                    .map(|k| if k == n - 1 { self.end } else { self.start + step * k as f64 })
                    .collect()
            }
        }
    }
}

impl FromStr for TGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, end, spacing, count] = parts[..] else {
            return Err(format!("expected start:end:geometric|linear:count, got {s:?}"));
        };
        let spacing = match spacing {
            "geometric" | "geo" => Spacing::Geometric,
            "linear" | "lin" => Spacing::Linear,
            other => return Err(format!("unknown spacing {other:?}")),
        };
        Ok(Self {
            start: parse_positive(start)?,
            end: parse_positive(end)?,
            spacing,
            count: count.parse().map_err(|_| format!("bad point count {count:?}"))?,
        })
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

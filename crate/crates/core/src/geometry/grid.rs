//! Rectangular sample grids in `(u, v, x)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Point;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub counts: [usize; 3],
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl Grid {
    pub fn new(counts: [usize; 3], lo: [f64; 3], hi: [f64; 3]) -> Self {
        Grid { counts, lo, hi }
    }

    /// `n³` points on `[0.5, 2] × [−1, 1] × [−1, 1]`.
    pub fn standard(n: usize) -> Self {
        Grid::new([n; 3], [0.5, -1.0, -1.0], [2.0, 1.0, 1.0])
    }

    fn axis(&self, k: usize, i: usize) -> f64 {
        let n = self.counts[k];
        if n <= 1 {
            self.lo[k]
        } else {
            self.lo[k] + (self.hi[k] - self.lo[k]) * i as f64 / (n - 1) as f64
        }
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in `u`-major order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.counts[0] {
            for j in 0..self.counts[1] {
                for k in 0..self.counts[2] {
                    out.push([self.axis(0, i), self.axis(1, j), self.axis(2, k)]);
                }
            }
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.counts;
        write!(
            f,
            "{a},{b},{c}:{}..{},{}..{},{}..{}",
            self.lo[0], self.hi[0], self.lo[1], self.hi[1], self.lo[2], self.hi[2]
        )
    }
}

/// Parses `nu,nv,nx:umin..umax,vmin..vmax,xmin..xmax`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::Parse(format!("grid '{s}': {why}"));
        let (counts, ranges) = s.split_once(':').ok_or_else(|| bad("expected 'counts:ranges'"))?;
        let counts: Vec<usize> = counts
            .split(',')
            .map(|c| c.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        let ranges: Vec<(f64, f64)> = ranges
            .split(',')
            .map(|r| {
                let (a, b) = r.split_once("..").ok_or_else(|| bad("range needs 'lo..hi'"))?;
                let a = a.trim().parse::<f64>().map_err(|e| bad(&e.to_string()))?;
                let b = b.trim().parse::<f64>().map_err(|e| bad(&e.to_string()))?;
                Ok((a, b))
            })
            .collect::<Result<_, Error>>()?;
        if counts.len() != 3 || ranges.len() != 3 {
            return Err(bad("need three counts and three ranges"));
        }
        if counts.contains(&0) {
            return Err(bad("counts must be positive"));
        }
        if ranges.iter().any(|(a, b)| !a.is_finite() || !b.is_finite() || a > b) {
            return Err(bad("ranges must be finite with lo <= hi"));
        }
        Ok(Grid::new(
            [counts[0], counts[1], counts[2]],
            [ranges[0].0, ranges[1].0, ranges[2].0],
            [ranges[0].1, ranges[1].1, ranges[2].1],
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_enumerate() {
        let g: Grid = "2,1,3:0.5..2,-1..1,-1..1".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], [0.5, -1.0, -1.0]);
        assert_eq!(pts[1], [0.5, -1.0, 0.0]);
        assert_eq!(pts[5], [2.0, -1.0, 1.0]);
        assert_eq!(g.to_string().parse::<Grid>().unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        for s in [
            "",
            "1,2:0..1,0..1,0..1",
            "0,1,1:0..1,0..1,0..1",
            "1,1,1:1..0,0..1,0..1",
            "a,b,c:x",
        ] {
            assert!(s.parse::<Grid>().is_err(), "{s}");
        }
    }

    #[test]
    fn standard_grid() {
        let pts = Grid::standard(5).points();
        assert_eq!(pts.len(), 125);
        assert_eq!(pts[124], [2.0, 1.0, 1.0]);
    }
}

//! Parsing and expansion of one-parameter sweep requests of the form
//! `name=start:stop:step`.

use std::fmt;
use std::str::FromStr;

/// The scalar a sweep varies; everything else stays at its flag value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Eps,
    Eta,
    Xi,
    Mu,
    P,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Eps => "eps",
            SweepParameter::Eta => "eta",
            SweepParameter::Xi => "xi",
            SweepParameter::Mu => "mu",
            SweepParameter::P => "p",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "eps" => Some(SweepParameter::Eps),
            "eta" => Some(SweepParameter::Eta),
            "xi" => Some(SweepParameter::Xi),
            "mu" => Some(SweepParameter::Mu),
            "p" => Some(SweepParameter::P),
            _ => None,
        }
    }

    /// Closed interval of admissible values. The prior is open at both
    /// ends, checked separately.
    fn domain(self) -> (f64, f64) {
        match self {
            SweepParameter::Mu => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An inclusive arithmetic grid over one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    parameter: SweepParameter,
    start: f64,
    stop: f64,
    step: f64,
}

impl SweepSpec {
    pub fn new(
        parameter: SweepParameter,
        start: f64,
        stop: f64,
        step: f64,
    ) -> Result<Self, String> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err("sweep bounds and step must be finite".to_string());
        }
        if step <= 0.0 {
            return Err(format!("sweep step must be positive (got {step})"));
        }
        if start > stop {
            return Err(format!("sweep start {start} must not exceed stop {stop}"));
        }
        let (min, max) = parameter.domain();
        if start < min || stop > max {
            return Err(format!(
                "sweep of {parameter} must stay within [{min}, {max}]"
            ));
        }
        if parameter == SweepParameter::P && (start == 0.0 || stop == 1.0) {
            return Err("sweep of p must stay strictly between 0 and 1".to_string());
        }
        Ok(SweepSpec {
            parameter,
            start,
            stop,
            step,
        })
    }

    pub fn parameter(&self) -> SweepParameter {
        self.parameter
    }

    /// All grid points: floor((stop-start)/step)+1 values spaced by the
    /// step, with the last one clamped to the stop. The count is taken
    /// with a hair of slack so a span that is an exact multiple of the
    /// step is not short one point through division roundoff.
    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let value = self.start + i as f64 * self.step;
                if value > self.stop {
                    self.stop
                } else {
                    value
                }
            })
            .collect()
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, rest) = s
            .split_once('=')
            .ok_or_else(|| format!("expected name=start:stop:step (got `{s}`)"))?;
        let parameter = SweepParameter::from_name(name).ok_or_else(|| {
            format!("unknown sweep parameter `{name}` (expected eps, eta, xi, mu, or p)")
        })?;
        let fields: Vec<&str> = rest.split(':').collect();
        if fields.len() != 3 {
            return Err(format!(
                "expected start:stop:step after `{name}=` (got `{rest}`)"
            ));
        }
        let number = |field: &str| {
            field
                .parse::<f64>()
                .map_err(|_| format!("`{field}` is not a number"))
        };
        SweepSpec::new(
            parameter,
            number(fields[0])?,
            number(fields[1])?,
            number(fields[2])?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_full_form() {
        let spec: SweepSpec = "eps=0.5:1.0:0.005".parse().unwrap();
        assert_eq!(spec.parameter(), SweepParameter::Eps);
        assert_eq!(spec.grid().len(), 101);
    }

    #[test]
    fn exact_multiples_keep_their_endpoint() {
        let spec: SweepSpec = "eta=0:1:0.25".parse().unwrap();
        assert_eq!(spec.grid(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn ragged_spans_stop_short() {
        let spec: SweepSpec = "eta=0:1:0.3".parse().unwrap();
        assert_eq!(spec.grid(), vec![0.0, 0.3, 0.6, 0.8999999999999999]);
    }

    #[test]
    fn final_point_is_clamped() {
        let spec: SweepSpec = "eps=0.5:1.0:0.005".parse().unwrap();
        assert_eq!(*spec.grid().last().unwrap(), 1.0);
    }

    #[test]
    fn negative_spans_are_fine_for_the_failure_shape() {
        let spec: SweepSpec = "mu=-1:1:0.5".parse().unwrap();
        assert_eq!(spec.grid(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn rejects_malformed_requests() {
        assert!("eps".parse::<SweepSpec>().is_err());
        assert!("foo=0:1:0.1".parse::<SweepSpec>().is_err());
        assert!("eps=0:1".parse::<SweepSpec>().is_err());
        assert!("eps=0:1:0".parse::<SweepSpec>().is_err());
        assert!("eps=1:0:0.1".parse::<SweepSpec>().is_err());
        assert!("eps=0:1:x".parse::<SweepSpec>().is_err());
        assert!("eps=-0.1:1:0.1".parse::<SweepSpec>().is_err());
        assert!("mu=-1.5:0:0.1".parse::<SweepSpec>().is_err());
        assert!("p=0:0.9:0.1".parse::<SweepSpec>().is_err());
        assert!("p=0.1:1:0.1".parse::<SweepSpec>().is_err());
    }
}

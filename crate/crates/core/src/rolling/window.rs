use std::ops::Range;

use chrono::{DateTime, TimeDelta, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marketdata::ReturnPanel;

/// Where window ends fall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alignment {
    /// Ends are multiples of the step since the Unix epoch (on the hour for a
    /// one-hour step).
    #[default]
    Calendar,
    /// The first end is exactly one width after the panel start.
    DataRelative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    #[serde(with = "duration_minutes")]
    width: TimeDelta,
    #[serde(with = "duration_minutes")]
    step: TimeDelta,
    alignment: Alignment,
}

mod duration_minutes {
    use chrono::TimeDelta;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(d: &TimeDelta, s: S) -> Result<S::Ok, S::Error> {
        d.num_minutes().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<TimeDelta, D::Error> {
        i64::deserialize(d).map(TimeDelta::minutes)
    }
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            width: TimeDelta::hours(24),
            step: TimeDelta::hours(1),
            alignment: Alignment::Calendar,
        }
    }
}

impl WindowSpec {
    pub fn new(width: TimeDelta, step: TimeDelta, alignment: Alignment) -> Result<Self> {
        if width <= TimeDelta::zero() || step <= TimeDelta::zero() {
            return Err(Error::InvalidInput("window width and step must be positive".into()));
        }
        if step > width {
            return Err(Error::InvalidInput(format!(
                "step of {} min exceeds width of {} min",
                step.num_minutes(),
                width.num_minutes()
            )));
        }
        Ok(WindowSpec {
            width,
            step,
            alignment,
        })
    }

    pub fn width(&self) -> TimeDelta {
        self.width
    }

    pub fn step(&self) -> TimeDelta {
        self.step
    }

    pub fn alignment(&self) -> Alignment {
        self.alignment
    }

    fn first_end(&self, start: DateTime<Utc>) -> DateTime<Utc> {
        let earliest = start + self.width;
        match self.alignment {
            Alignment::DataRelative => earliest,
            Alignment::Calendar => {
                let step = self.step.num_milliseconds();
                let t = earliest.timestamp_millis();
                let aligned = t.div_euclid(step) * step;
                let aligned = if aligned < t { aligned + step } else { aligned };
                DateTime::from_timestamp_millis(aligned).expect("aligned instant in range")
            }
        }
    }
}

/// One rolling position: returns stamped in `(end - width, end]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub end: DateTime<Utc>,
    pub rows: Range<usize>,
}

/// Every window that fits entirely inside the panel, in time order.
pub fn window_positions(panel: &ReturnPanel, spec: &WindowSpec) -> Result<Vec<Window>> {
    let grid = panel.grid();
    let stamps = panel.return_timestamps();
    let last = *stamps.last().expect("panel has at least one row");
    let mut out = Vec::new();
    let mut end = spec.first_end(grid[0]);
    while end <= last {
        let start = end - spec.width;
        let lo = stamps.partition_point(|&t| t <= start);
        let hi = stamps.partition_point(|&t| t <= end);
        out.push(Window { end, rows: lo..hi });
        end += spec.step;
    }
    if out.is_empty() {
        let step = grid[1] - grid[0];
        let required = (spec.width.num_milliseconds() / step.num_milliseconds().max(1)) as usize;
        return Err(Error::PanelTooShort {
            available: panel.n_rows(),
            required,
        });
    }
    Ok(out)
}

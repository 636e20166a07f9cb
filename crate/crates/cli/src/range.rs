use std::fmt;
use std::str::FromStr;

/// Inclusive integer range written as `N`, `A..B` or `A..=B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
}

impl IntRange {
    pub fn single(v: i64) -> Self {
        IntRange { start: v, end: v }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

impl serde::Serialize for IntRange {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |v: &str| {
            v.trim()
                .parse::<i64>()
                .map_err(|e| format!("invalid integer `{v}`: {e}"))
        };
        let range = match s.split_once("..") {
            None => IntRange::single(parse(s)?),
            Some((a, b)) => IntRange {
                start: parse(a)?,
                end: parse(b.strip_prefix('=').unwrap_or(b))?,
            },
        };
        if range.start > range.end {
            return Err(format!("range `{s}` is empty (start > end)"));
        }
        Ok(range)
    }
}

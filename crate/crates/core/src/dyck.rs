//! Dyck paths and their statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

/// A balanced path of up and down steps that never goes below its start.
/// Size is the number of up steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath(Vec<Step>);

impl DyckPath {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let mut h: i64 = 0;
        for (index, s) in steps.iter().enumerate() {
            h += if *s == Step::U { 1 } else { -1 };
            if h < 0 {
                return Err(Error::BelowAxis { index });
            }
        }
        if h != 0 {
            let ups = steps.iter().filter(|&&s| s == Step::U).count();
            return Err(Error::Unbalanced {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(Self(steps))
    }

    /// Parses a step string over `{U, D}`, case-insensitively.
    pub fn parse(text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(index, ch)| match ch {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                _ => Err(Error::IllegalStep { index, ch }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(steps)
    }

    pub(crate) fn from_trusted(steps: Vec<Step>) -> Self {
        debug_assert!(Self::from_steps(steps.clone()).is_ok());
        Self(steps)
    }

    /// `(UD)^n`
    pub fn sawtooth(n: usize) -> Self {
        Self([Step::U, Step::D].repeat(n))
    }

    /// `U^n D^n`
    pub fn pyramid(n: usize) -> Self {
        let mut steps = vec![Step::U; n];
        steps.extend(std::iter::repeat_n(Step::D, n));
        Self(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `U self D`
    pub fn elevate(&self) -> Self {
        let mut steps = Vec::with_capacity(self.0.len() + 2);
        steps.push(Step::U);
        steps.extend_from_slice(&self.0);
        steps.push(Step::D);
        Self(steps)
    }

    pub fn concat(parts: &[&DyckPath]) -> Self {
        Self(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// Indices (in step coordinates) of the vertices on the axis after the
    /// start, i.e. the returns.
    fn return_positions(&self) -> Vec<usize> {
        let mut h = 0i64;
        let mut out = Vec::new();
        for (i, s) in self.0.iter().enumerate() {
            h += if *s == Step::U { 1 } else { -1 };
            if h == 0 {
                out.push(i + 1);
            }
        }
        out
    }

    /// Splits at the returns into elevated paths.
    pub fn components(&self) -> Vec<DyckPath> {
        let mut start = 0;
        self.return_positions()
            .into_iter()
            .map(|end| {
                let c = DyckPath(self.0[start..end].to_vec());
                start = end;
                c
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.return_positions().len()
    }

    pub fn is_elevated(&self) -> bool {
        self.num_components() == 1
    }

    pub fn height(&self) -> u32 {
        let mut h = 0i64;
        let mut best = 0;
        for s in &self.0 {
            h += if *s == Step::U { 1 } else { -1 };
            best = best.max(h);
        }
        best as u32
    }

    pub fn starts_with(&self, prefix: &[Step]) -> bool {
        self.0.starts_with(prefix)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Every Dyck path of size `n`, in lexicographic order with `U < D`.
pub fn all_paths(n: usize) -> Vec<DyckPath> {
    fn go(steps: &mut Vec<Step>, ups: usize, downs: usize, n: usize, out: &mut Vec<DyckPath>) {
        if ups == n && downs == n {
            out.push(DyckPath(steps.clone()));
            return;
        }
        if ups < n {
            steps.push(Step::U);
            go(steps, ups + 1, downs, n, out);
            steps.pop();
        }
        if downs < ups {
            steps.push(Step::D);
            go(steps, ups, downs + 1, n, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(2 * n), 0, 0, n, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DyckStatRecord {
    pub num_components: u32,
    pub num_returns: u32,
    pub height: u32,
    pub num_peaks: u32,
    pub first_ascent_len: u32,
    pub first_descent_len: u32,
    #[serde(rename = "num_initial_UD")]
    pub num_initial_ud: u32,
    #[serde(rename = "num_terminal_UD")]
    pub num_terminal_ud: u32,
    /// Largest `k` with the path equal to `U^k Q D^k`, `Q` a Dyck path.
    pub degree_of_elevation: u32,
    /// 1 if the path starts `UD` and has height at least 3, otherwise
    /// `1 + num_initial_ud`.
    pub table1_initial_zero_image: u32,
}

impl DyckStatRecord {
    /// Right-hand statistics matched against
    /// [`crate::ascent::AvoiderStatRecord::table1`].
    pub fn table1(&self) -> [u32; 3] {
        [
            self.table1_initial_zero_image,
            self.num_terminal_ud,
            self.num_initial_ud,
        ]
    }

    /// Right-hand statistics matched against
    /// [`crate::ascent::AvoiderStatRecord::table2`].
    pub fn table2(&self) -> [u32; 7] {
        [
            self.first_ascent_len,
            self.first_descent_len,
            self.degree_of_elevation,
            self.num_initial_ud,
            self.num_terminal_ud,
            self.num_peaks,
            self.num_returns,
        ]
    }
}

pub fn dyck_stats(path: &DyckPath) -> Result<DyckStatRecord> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let s = path.steps();
    let len = s.len();

    let num_returns = path.num_components() as u32;
    let height = path.height();
    let num_peaks = s.windows(2).filter(|w| w == &[Step::U, Step::D]).count() as u32;
    let first_ascent_len = s.iter().take_while(|&&x| x == Step::U).count() as u32;
    let first_descent_len = s[first_ascent_len as usize..]
        .iter()
        .take_while(|&&x| x == Step::D)
        .count() as u32;

    let num_initial_ud = s
        .chunks_exact(2)
        .take_while(|c| c == &[Step::U, Step::D])
        .count() as u32;
    let num_terminal_ud = s
        .rchunks_exact(2)
        .take_while(|c| c == &[Step::U, Step::D])
        .count() as u32;

    // heights[i] is the level after i steps
    let mut heights = Vec::with_capacity(len + 1);
    heights.push(0i64);
    for x in s {
        let h = heights.last().unwrap() + if *x == Step::U { 1 } else { -1 };
        heights.push(h);
    }
    let mut degree_of_elevation = 0u32;
    for k in 1..=len / 2 {
        let wrapped = s[k - 1] == Step::U
            && s[len - k] == Step::D
            && heights[k..=len - k].iter().all(|&h| h >= k as i64);
        if !wrapped {
            break;
        }
        degree_of_elevation = k as u32;
    }

    let table1_initial_zero_image = if path.starts_with(&[Step::U, Step::D]) && height >= 3 {
        1
    } else {
        1 + num_initial_ud
    };

    Ok(DyckStatRecord {
        num_components: num_returns,
        num_returns,
        height,
        num_peaks,
        first_ascent_len,
        first_descent_len,
        num_initial_ud,
        num_terminal_ud,
        degree_of_elevation,
        table1_initial_zero_image,
    })
}

use serde::Serialize;

use super::AscentSequence;

/// Statistics on avoiders that are matched against Dyck path statistics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AvoiderStatRecord {
    pub num_zeros: u32,
    pub num_initial_zeros: u32,
    pub num_terminal_zeros: u32,
    /// Length of the segment starting just after the second 0 and ending at
    /// the next 1 (inclusive); 0 when there is no second 0 or no 1 after it.
    pub seg_after_second_zero_to_one: u32,
    /// Same segment but starting at the second 0; 1 when undefined.
    pub seg_at_second_zero_to_one: u32,
    /// `None` only for the strictly increasing sequence `01...(n-1)`.
    pub min_repeated_entry: Option<u32>,
    pub num_terminal_max_possible: u32,
    pub num_lr_maxima: u32,
    pub num_rl_minima: u32,
}

impl AvoiderStatRecord {
    /// The three left-hand statistics of the per-object correspondence:
    /// initial 0s, terminal 0s, segment after the second 0.
    pub fn table1(&self) -> [u32; 3] {
        [
            self.num_initial_zeros,
            self.num_terminal_zeros,
            self.seg_after_second_zero_to_one,
        ]
    }

    /// The seven statistics of the conjectured joint equidistribution, in
    /// the order matching [`crate::dyck::DyckStatRecord::table2`]. An
    /// undefined minimum repeated entry is encoded as `u32::MAX`.
    pub fn table2(&self) -> [u32; 7] {
        [
            self.num_zeros,
            self.seg_at_second_zero_to_one,
            self.num_terminal_zeros,
            self.min_repeated_entry.unwrap_or(u32::MAX),
            self.num_terminal_max_possible,
            self.num_lr_maxima,
            self.num_rl_minima,
        ]
    }
}

pub fn avoider_stats(seq: &AscentSequence) -> AvoiderStatRecord {
    let s = seq.entries();
    let n = s.len();

    let num_zeros = s.iter().filter(|&&v| v == 0).count() as u32;
    let num_initial_zeros = s.iter().take_while(|&&v| v == 0).count() as u32;
    let num_terminal_zeros = s.iter().rev().take_while(|&&v| v == 0).count() as u32;

    let second_zero = s
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 0)
        .nth(1)
        .map(|(i, _)| i);
    let one_after =
        second_zero.and_then(|z| s[z + 1..].iter().position(|&v| v == 1).map(|p| z + 1 + p));
    let (seg_after, seg_at) = match (second_zero, one_after) {
        (Some(z), Some(o)) => ((o - z) as u32, (o - z + 1) as u32),
        _ => (0, 1),
    };

    let mut seen_counts = vec![0u32; n + 1];
    for &v in s {
        seen_counts[v as usize] += 1;
    }
    let min_repeated_entry = seen_counts.iter().position(|&c| c >= 2).map(|v| v as u32);

    // An entry is "max possible" when it equals 1 + asc(prefix before it).
    let mut max_possible = vec![false; n];
    let mut asc = 0;
    for i in 0..n {
        if i > 0 {
            max_possible[i] = s[i] == asc + 1;
            if s[i - 1] < s[i] {
                asc += 1;
            }
        }
    }
    let num_terminal_max_possible = max_possible.iter().rev().take_while(|&&m| m).count() as u32;

    let mut num_lr_maxima = 0;
    let mut running_max = None;
    for &v in s {
        if running_max.is_none_or(|m| v > m) {
            num_lr_maxima += 1;
            running_max = Some(v);
        }
    }
    let mut num_rl_minima = 0;
    let mut running_min = None;
    for &v in s.iter().rev() {
        if running_min.is_none_or(|m| v < m) {
            num_rl_minima += 1;
            running_min = Some(v);
        }
    }

    AvoiderStatRecord {
        num_zeros,
        num_initial_zeros,
        num_terminal_zeros,
        seg_after_second_zero_to_one: seg_after,
        seg_at_second_zero_to_one: seg_at,
        min_repeated_entry,
        num_terminal_max_possible,
        num_lr_maxima,
        num_rl_minima,
    }
}

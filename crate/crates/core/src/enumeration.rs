//! Brute-force enumeration of odd-even partitions and overpartitions,
//! straight from their combinatorial definitions.
//!
//! Nothing here touches a generating function; these are the oracles the
//! series code is checked against.

use std::fmt;

use serde::Serialize;

/// Parts alternate in parity, smallest part odd. Stored nonincreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OEPartition {
    pub parts: Vec<u32>,
}

/// Odd-even overpartition, stored nonincreasing with one flag per part.
///
/// Among equal values the overlined copy is the first occurrence in the
/// nonincreasing listing, so reading from the smallest part upward it is the
/// last of its run.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OEOverpartition {
    pub parts: Vec<u32>,
    pub overlined: Vec<bool>,
}

impl OEPartition {
    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_valid(&self) -> bool {
        let up: Vec<u32> = self.parts.iter().rev().copied().collect();
        match up.first() {
            None => true,
            Some(s) if s % 2 == 0 => false,
            Some(_) => up.windows(2).all(|w| w[1] >= w[0] && (w[1] - w[0]) % 2 == 1),
        }
    }
}

impl OEOverpartition {
    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_valid(&self) -> bool {
        if self.parts.len() != self.overlined.len() {
            return false;
        }
        let up: Vec<(u32, bool)> = self.parts.iter().copied().zip(self.overlined.iter().copied()).rev().collect();
        match up.first() {
            None => true,
            Some((s, _)) if s % 2 == 0 => false,
            Some(_) => up.windows(2).all(|w| step_allowed(w[0], w[1])),
        }
    }

    /// The underlying odd-even partition when no part is overlined.
    pub fn as_plain(&self) -> Option<OEPartition> {
        if self.overlined.iter().any(|&b| b) {
            None
        } else {
            Some(OEPartition { parts: self.parts.clone() })
        }
    }
}

// `prev` is the smaller neighbour when reading upward.
fn step_allowed(prev: (u32, bool), next: (u32, bool)) -> bool {
    let (a, a_bar) = prev;
    let (b, _) = next;
    if b < a {
        return false;
    }
    if b == a && a_bar {
        // The overlined copy of a value must come last in the upward scan.
        return false;
    }
    let diff = b - a;
    if a_bar {
        diff % 2 == 0
    } else {
        diff % 2 == 1
    }
}

impl fmt::Display for OEPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join("+"))
    }
}

impl fmt::Display for OEOverpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self
            .parts
            .iter()
            .zip(&self.overlined)
            .map(|(p, &bar)| if bar { format!("{p}'") } else { p.to_string() })
            .collect();
        write!(f, "{}", s.join("+"))
    }
}

/// Count plus (optionally) the objects themselves.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration<T> {
    pub n: u32,
    pub count: u64,
    pub listing: Option<Vec<T>>,
}

/// Odd-even partitions of `n`; `n = 0` counts the empty partition.
pub fn enum_oe(n: u32, list: bool) -> Enumeration<OEPartition> {
    let mut found = Vec::new();
    let mut stack = Vec::new();
    let mut count = 0u64;
    if n == 0 {
        count = 1;
        if list {
            found.push(OEPartition { parts: vec![] });
        }
    } else {
        for s in (1..=n).step_by(2) {
            stack.push(s);
            walk_oe(n - s, s, &mut stack, &mut count, list.then_some(&mut found));
            stack.pop();
        }
    }
    finish(n, count, list, found)
}

fn walk_oe(rest: u32, last: u32, stack: &mut Vec<u32>, count: &mut u64, mut out: Option<&mut Vec<OEPartition>>) {
    if rest == 0 {
        *count += 1;
        if let Some(out) = out {
            out.push(OEPartition { parts: stack.iter().rev().copied().collect() });
        }
        return;
    }
    // Next part is larger and of opposite parity.
    let mut next = last + 1;
    while next <= rest {
        stack.push(next);
        walk_oe(rest - next, next, stack, count, out.as_deref_mut());
        stack.pop();
        next += 2;
    }
}

/// Odd-even overpartitions of `n`; `n = 0` counts the empty overpartition.
pub fn enum_oebar(n: u32, list: bool) -> Enumeration<OEOverpartition> {
    let mut found = Vec::new();
    let mut stack = Vec::new();
    let mut count = 0u64;
    if n == 0 {
        count = 1;
        if list {
            found.push(OEOverpartition { parts: vec![], overlined: vec![] });
        }
    } else {
        for s in (1..=n).step_by(2) {
            for bar in [false, true] {
                stack.push((s, bar));
                walk_oebar(n - s, &mut stack, &mut count, list.then_some(&mut found));
                stack.pop();
            }
        }
    }
    finish(n, count, list, found)
}

fn walk_oebar(
    rest: u32,
    stack: &mut Vec<(u32, bool)>,
    count: &mut u64,
    mut out: Option<&mut Vec<OEOverpartition>>,
) {
    if rest == 0 {
        *count += 1;
        if let Some(out) = out {
            out.push(OEOverpartition {
                parts: stack.iter().rev().map(|p| p.0).collect(),
                overlined: stack.iter().rev().map(|p| p.1).collect(),
            });
        }
        return;
    }
    let prev = *stack.last().expect("walk starts with the smallest part");
    for next in prev.0..=rest {
        for bar in [false, true] {
            // A value can carry the overline only once.
            if bar && next == prev.0 && prev.1 {
                continue;
            }
            if !step_allowed(prev, (next, bar)) {
                continue;
            }
            stack.push((next, bar));
            walk_oebar(rest - next, stack, count, out.as_deref_mut());
            stack.pop();
        }
    }
}

fn finish<T: Ord>(n: u32, count: u64, list: bool, mut found: Vec<T>) -> Enumeration<T> {
    let listing = if list {
        found.sort();
        Some(found)
    } else {
        None
    };
    Enumeration { n, count, listing }
}

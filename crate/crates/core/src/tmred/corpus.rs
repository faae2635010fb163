//! Small machines bundled for tests, benchmarks and the CLI.
//!
//! Each file lists its sample inputs on a `# inputs:` line; `-` is the empty
//! word.

use super::machine::{check_normalized, MachineDesc, NormalizedTm};

const FILES: [(&str, &str); 12] = [
    ("accept-empty", include_str!("../../data/machines/accept-empty.tm")),
    ("contains-b", include_str!("../../data/machines/contains-b.tm")),
    ("erase-right", include_str!("../../data/machines/erase-right.tm")),
    ("even-as", include_str!("../../data/machines/even-as.tm")),
    ("fall-off-left", include_str!("../../data/machines/fall-off-left.tm")),
    ("bba-walk", include_str!("../../data/machines/bba-walk.tm")),
    ("first-is-a", include_str!("../../data/machines/first-is-a.tm")),
    ("left-mover", include_str!("../../data/machines/left-mover.tm")),
    ("loop-forever", include_str!("../../data/machines/loop-forever.tm")),
    ("no-transitions", include_str!("../../data/machines/no-transitions.tm")),
    ("right-or-accept", include_str!("../../data/machines/right-or-accept.tm")),
    ("stay-shuffle", include_str!("../../data/machines/stay-shuffle.tm")),
];

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub machine: NormalizedTm,
    pub inputs: Vec<String>,
}

pub fn corpus() -> Vec<CorpusEntry> {
    FILES.iter().map(|&(name, source)| entry(name, source)).collect()
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(name, source)| entry(name, source))
}

fn entry(name: &'static str, source: &'static str) -> CorpusEntry {
    let desc: MachineDesc = source.parse().expect("bundled machine parses");
    let machine = check_normalized(&desc).expect("bundled machine is normalized");
    let inputs = source
        .lines()
        .find_map(|l| l.strip_prefix("# inputs:"))
        .map(|l| {
            l.split_whitespace()
                .map(|w| if w == "-" { String::new() } else { w.to_string() })
                .collect()
        })
        .unwrap_or_default();
    CorpusEntry {
        name,
        source,
        machine,
        inputs,
    }
}

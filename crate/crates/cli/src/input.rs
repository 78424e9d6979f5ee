use std::fs;
use std::io::{self, Read};
use std::path::Path;

/// One non-empty, non-comment input line with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputLine {
    pub line: usize,
    pub text: String,
}

pub fn split_lines(text: &str) -> Vec<InputLine> {
    text.lines()
        .enumerate()
        .map(|(i, l)| InputLine { line: i + 1, text: l.trim().to_string() })
        .filter(|l| !l.text.is_empty() && !l.text.starts_with('#'))
        .collect()
}

/// Read graph6 lines from a file, or from stdin when the path is `-`.
pub fn read_lines(path: &Path) -> io::Result<Vec<InputLine>> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    Ok(split_lines(&text))
}

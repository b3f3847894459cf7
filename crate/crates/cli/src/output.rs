use serde::Serialize;
use std::io::{self, IsTerminal, Write};

pub struct Out {
    pub json: bool,
    color: bool,
    sink: io::StdoutLock<'static>,
}

impl Out {
    pub fn stdout(json: bool) -> Out {
        let stdout = io::stdout();
        let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && stdout.is_terminal();
        Out { json, color, sink: stdout.lock() }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.sink, "{}", s.as_ref());
    }

    pub fn record<T: Serialize>(&mut self, value: &T) {
        let text = serde_json::to_string(value).expect("records serialize");
        self.line(text);
    }

    pub fn status(&self, ok: bool, word: &str) -> String {
        match (self.color, ok) {
            (false, _) => word.to_string(),
            (true, true) => format!("\x1b[32m{word}\x1b[0m"),
            (true, false) => format!("\x1b[31m{word}\x1b[0m"),
        }
    }

    /// Left-aligned columns, two spaces apart.
    pub fn table(&mut self, header: &[&str], rows: &[Vec<String>]) {
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(visible_len(cell));
            }
        }
        let render = |cells: Vec<&str>| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    s.push_str(cell);
                    s.push_str(&" ".repeat(w - visible_len(cell) + 2));
                }
            }
            s
        };
        let head = render(header.to_vec());
        self.line(head);
        for row in rows {
            let line = render(row.iter().map(String::as_str).collect());
            self.line(line);
        }
    }
}

fn visible_len(s: &str) -> usize {
    let mut len = 0;
    let mut escape = false;
    for c in s.chars() {
        match (escape, c) {
            (false, '\x1b') => escape = true,
            (true, 'm') => escape = false,
            (true, _) => {}
            (false, _) => len += 1,
        }
    }
    len
}

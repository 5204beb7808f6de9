//! NDJSON report streams.
//!
//! A report is a header line `{"command", "inputs"}`, one line per result
//! and a closing `{"summary"}` line. Nothing depends on the clock unless
//! timing is requested, so identical inputs give identical bytes.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        let digest = Sha256::digest(bytes);
        Input {
            path: path.to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Serialize)]
struct Header<'a> {
    command: &'a str,
    inputs: &'a [Input],
}

#[derive(Serialize)]
struct Summary {
    results: usize,
    failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub struct Report {
    sinks: Vec<Box<dyn Write>>,
    results: usize,
    failed: usize,
    started: Option<Instant>,
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: "<report>".into(),
        source: e,
    }
}

impl Report {
    /// Starts a report and writes its header to every sink.
    pub fn start(command: &str, inputs: &[Input], sinks: Vec<Box<dyn Write>>, timing: bool) -> Result<Self> {
        let mut r = Report {
            sinks,
            results: 0,
            failed: 0,
            started: timing.then(Instant::now),
        };
        r.line(&Header { command, inputs })?;
        Ok(r)
    }

    fn line<T: Serialize>(&mut self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string(value).expect("report values serialize");
        s.push('\n');
        for w in &mut self.sinks {
            w.write_all(s.as_bytes()).map_err(io)?;
        }
        Ok(())
    }

    /// Writes one result; `ok = false` marks a failed verdict.
    pub fn result<T: Serialize>(&mut self, value: &T, ok: bool) -> Result<()> {
        self.results += 1;
        if !ok {
            self.failed += 1;
        }
        self.line(value)
    }

    pub fn failed(&self) -> usize {
        self.failed
    }

    /// Writes the summary and returns the exit code.
    pub fn finish(mut self) -> Result<i32> {
        let summary = Summary {
            results: self.results,
            failed: self.failed,
            elapsed_ms: self.started.map(|t| t.elapsed().as_millis()),
        };
        #[derive(Serialize)]
        struct Wrap {
            summary: Summary,
        }
        self.line(&Wrap { summary })?;
        for w in &mut self.sinks {
            w.flush().map_err(io)?;
        }
        Ok(if self.failed == 0 {
            crate::exit::PASS
        } else {
            crate::exit::FAILED
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::{Arc, Mutex};

    #[derive(Clone, Default)]
    struct Buf(Arc<Mutex<Vec<u8>>>);

    impl Write for Buf {
        fn write(&mut self, b: &[u8]) -> std::io::Result<usize> {
            self.0.lock().unwrap().extend_from_slice(b);
            Ok(b.len())
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn layout_and_exit_code() {
        let buf = Buf::default();
        let inputs = [Input::new("x", b"abc")];
        let mut r = Report::start("demo", &inputs, vec![Box::new(buf.clone())], false).unwrap();
        r.result(&serde_json::json!({"b": 1, "a": 2}), true).unwrap();
        r.result(&serde_json::json!({"c": 3}), false).unwrap();
        assert_eq!(r.finish().unwrap(), 1);
        let text = String::from_utf8(buf.0.lock().unwrap().clone()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            r#"{"command":"demo","inputs":[{"path":"x","sha256":"ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"}]}"#
        );
        assert_eq!(lines[1], r#"{"b":1,"a":2}"#);
        assert_eq!(lines[3], r#"{"summary":{"results":2,"failed":1}}"#);
    }
}

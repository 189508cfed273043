//! Runs an SMT-LIB2 solver as a child process: the script goes to its
//! standard input and the first answer line is read back from standard
//! output.

use std::io::{Read, Write};
use std::path::Path;
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

/// Environment variable naming the solver command line.
pub const SOLVER_ENV: &str = "FOLCHECK_SOLVER";

const DEFAULT_SOLVER: &str = "z3";

/// A solver command line: program plus arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverCommand {
    pub program: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    Sat,
    Unsat,
    /// The solver answered `unknown`.
    Unknown,
    Timeout,
    Unavailable(String),
    Error(String),
}

impl Default for SolverCommand {
    fn default() -> Self {
        Self::from_env()
    }
}

impl SolverCommand {
    /// Splits a command line on whitespace. `None` for a blank line.
    pub fn parse(command_line: &str) -> Option<Self> {
        let mut words = command_line.split_whitespace().map(str::to_string);
        let program = words.next()?;
        Some(Self {
            program,
            args: words.collect(),
        })
    }

    /// `$FOLCHECK_SOLVER` if set and non-blank, otherwise `z3` from `PATH`.
    pub fn from_env() -> Self {
        std::env::var(SOLVER_ENV)
            .ok()
            .and_then(|s| Self::parse(&s))
            .unwrap_or_else(|| Self::parse(DEFAULT_SOLVER).expect("default solver"))
    }

    /// Arguments actually passed. Without explicit arguments, well-known
    /// solvers get the flags that make them read SMT-LIB2 from stdin.
    pub fn effective_args(&self) -> Vec<String> {
        if !self.args.is_empty() {
            return self.args.clone();
        }
        let name = Path::new(&self.program)
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or(&self.program);
        let defaults: &[&str] = match name {
            "z3" | "z3.exe" => &["-in", "-smt2"],
            "cvc5" | "cvc4" => &["--lang=smt2"],
            _ => &[],
        };
        defaults.iter().map(|s| s.to_string()).collect()
    }

    /// Runs one script. The process is killed once `timeout` elapses.
    pub fn run(&self, script: &str, timeout: Duration) -> SolverAnswer {
        let mut child = match Command::new(&self.program)
            .args(self.effective_args())
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
        {
            Ok(child) => child,
            Err(e) => return SolverAnswer::Unavailable(format!("{}: {e}", self.program)),
        };

        let mut stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let mut text = String::new();
            let _ = stdout.read_to_string(&mut text);
            let _ = tx.send(text);
        });

        if let Some(mut stdin) = child.stdin.take() {
            let script = script.to_string();
            // writing on its own thread keeps a solver that stops reading from
            // blocking us past the deadline
            thread::spawn(move || {
                let _ = stdin.write_all(script.as_bytes());
            });
        }

        match rx.recv_timeout(timeout) {
            Ok(text) => {
                let _ = child.wait();
                interpret_output(&text)
            }
            Err(_) => {
                let _ = child.kill();
                let _ = child.wait();
                SolverAnswer::Timeout
            }
        }
    }

    /// Whether the command can be launched and answers a trivial script.
    pub fn probe(&self, timeout: Duration) -> Result<(), String> {
        match self.run("(check-sat)\n", timeout) {
            SolverAnswer::Sat => Ok(()),
            SolverAnswer::Unavailable(msg) => Err(msg),
            other => Err(format!("{}: unexpected answer {other:?}", self.program)),
        }
    }
}

fn interpret_output(text: &str) -> SolverAnswer {
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        match line {
            "sat" => return SolverAnswer::Sat,
            "unsat" => return SolverAnswer::Unsat,
            "unknown" | "timeout" => return SolverAnswer::Unknown,
            _ if line.starts_with("(error") => return SolverAnswer::Error(line.to_string()),
            _ => {}
        }
    }
    SolverAnswer::Error(format!("no answer in solver output {:?}", text.trim()))
}

//! Line-oriented REPL. Plain lines are proof sentences run with nltac;
//! lines starting with `:` are commands (see [`HELP`]).

use std::io::{self, BufRead, Write};

use tactica::induce::custom_kind;
use tactica::session::{Mode, Session, SessionError};

pub const HELP: &str = "\
commands:
  :start <formula>          begin a proof
  :explain <sentences>      run stepwise and show each fragment
  :undo                     revert the last step
  :def \"<utterance>\" = \"<definition>\"
  :custom <kind> <name>     kind: tactic | thm_tactic | thmlist_tactic
  :qed [<name>]             check the closed proof, storing it under <name>
  :script                   the transcript as one core-language tactic
  :grammar                  dump the current grammar
  :help | :quit
anything else is run as proof sentences";

fn show_error(out: &mut impl Write, e: &SessionError) -> io::Result<()> {
    writeln!(out, "error[{}]: {e}", e.kind())
}

fn show_goals(out: &mut impl Write, s: &Session) -> io::Result<()> {
    match s.tree() {
        Some(t) => writeln!(out, "{t}"),
        None => writeln!(out, "No proof in progress."),
    }
}

/// `"<a>" = "<b>"`.
fn def_args(rest: &str) -> Option<(&str, &str)> {
    let rest = rest.trim().strip_prefix('"')?;
    let (u, rest) = rest.split_once('"')?;
    let rest = rest.trim_start().strip_prefix('=')?.trim_start().strip_prefix('"')?;
    let (d, tail) = rest.split_once('"')?;
    tail.trim().is_empty().then_some((u, d))
}

/// Executes one input line. Returns false on `:quit`.
pub fn handle(s: &mut Session, line: &str, out: &mut impl Write) -> io::Result<bool> {
    let line = line.trim();
    if line.is_empty() {
        return Ok(true);
    }
    let Some(cmd) = line.strip_prefix(':') else {
        match s.run(line, Mode::Nltac) {
            Ok(_) => show_goals(out, s)?,
            Err(e) => show_error(out, &e)?,
        }
        return Ok(true);
    };
    let (name, rest) = cmd.split_once(char::is_whitespace).unwrap_or((cmd, ""));
    let rest = rest.trim();
    match name {
        "quit" | "q" => return Ok(false),
        "help" | "h" => writeln!(out, "{HELP}")?,
        "start" => match s.start_proof(rest) {
            Ok(()) => show_goals(out, s)?,
            Err(e) => show_error(out, &e)?,
        },
        "explain" => match s.run(rest, Mode::Nlexplain) {
            Ok(steps) => {
                for x in steps {
                    writeln!(out, "{}", x.fragment)?;
                }
                show_goals(out, s)?;
            }
            Err(e) => show_error(out, &e)?,
        },
        "undo" => match s.undo() {
            Ok(()) => show_goals(out, s)?,
            Err(e) => show_error(out, &e)?,
        },
        "def" => match def_args(rest) {
            None => writeln!(out, "usage: :def \"<utterance>\" = \"<definition>\"")?,
            Some((u, d)) => match s.def(u, d) {
                Ok(r) => {
                    writeln!(out, "{} rule(s) added", r.rules_added())?;
                    for rule in &r.rules {
                        writeln!(out, "  {rule}")?;
                    }
                }
                Err(e) => show_error(out, &e)?,
            },
        },
        "custom" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
            [kind, name] => match custom_kind(kind) {
                None => writeln!(out, "unknown kind `{kind}`")?,
                Some(ty) => match s.add_custom(name, ty, None) {
                    Ok(()) => writeln!(out, "declared {name}")?,
                    Err(e) => show_error(out, &e)?,
                },
            },
            _ => writeln!(out, "usage: :custom <kind> <name>")?,
        },
        "qed" => match s.qed((!rest.is_empty()).then_some(rest)) {
            Ok(th) => writeln!(out, "proved: {}", th.concl())?,
            Err(e) => show_error(out, &e)?,
        },
        "script" => writeln!(out, "{}", s.export_script())?,
        "grammar" => write!(out, "{}", s.grammar().dump())?,
        _ => writeln!(out, "unknown command `:{name}`; try :help")?,
    }
    Ok(true)
}

/// Reads lines until end of input or `:quit`.
pub fn run(s: &mut Session, input: impl BufRead, out: &mut impl Write, prompt: bool) -> io::Result<()> {
    if prompt {
        write!(out, "> ")?;
        out.flush()?;
    }
    for line in input.lines() {
        if !handle(s, &line?, out)? {
            break;
        }
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
    }
    Ok(())
}

//! Entry points over a tactic-language session: a line REPL, a batch
//! runner and exporter for proof files, and an HTTP+JSON session service.

pub mod repl;
pub mod runner;
pub mod server;

use tactica::kernel::TheoremStore;
use tactica::library::{LibraryError, LibraryStore, LoadReport};
use tactica::session::Session;

/// A fresh session over the bundled theorems with `libs` (registered
/// names or file paths) replayed in order.
pub fn session_with(libs: &[String]) -> Result<(Session, LoadReport), LibraryError> {
    let store = TheoremStore::bundled();
    let registered = LibraryStore::bundled(&store);
    let mut s = Session::new(store);
    let items: Vec<&str> = libs.iter().map(String::as_str).collect();
    let report = registered.load(&mut s, &items)?;
    Ok((s, report))
}

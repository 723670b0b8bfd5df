//! Regenerates `fixtures/*.json` from `tessella_core::fixtures`.
//!
//! cargo run -p tessella-cli --example gen_fixtures

use std::fs;
use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    fs::create_dir_all(&dir)?;
    for (name, doc) in tessella_core::fixtures::documents() {
        fs::write(dir.join(format!("{name}.json")), doc.to_json())?;
    }
    for (name, text) in tessella_core::fixtures::malformed() {
        fs::write(dir.join(format!("{name}.json")), text)?;
    }
    Ok(())
}

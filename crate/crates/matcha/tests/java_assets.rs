//! The checked-in annotation package matches what `annotate` installs.
//! Set MATCHA_BLESS=1 to rewrite the assets.

use std::path::Path;

use matcha::core::annotation::annotation_sources;
use matcha::core::taxonomy::Taxonomy;

#[test]
fn assets_match_generated_sources() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/java/matcha/annotation");
    let sources = annotation_sources(&Taxonomy::bundled());
    if std::env::var_os("MATCHA_BLESS").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        for (name, text) in &sources {
            std::fs::write(dir.join(name), text).unwrap();
        }
    }
    let mut on_disk: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    on_disk.sort();
    let mut names: Vec<String> = sources.iter().map(|(n, _)| n.clone()).collect();
    names.sort();
    assert_eq!(on_disk, names);
    for (name, text) in &sources {
        assert_eq!(&std::fs::read_to_string(dir.join(name)).unwrap(), text, "{name} is stale");
    }
}

//! Quick-fix menus and presets offered for two reference calls.

use std::collections::BTreeSet;

use matcha_core::detect::{detect_api_calls, ApiList};
use matcha_core::java::parse_unit;
use matcha_core::taxonomy::Taxonomy;
use matcha_core::wizard::{WizardStep, NONE_OF_THE_ABOVE};

const LOCATION: &str = "import android.location.Location;\nimport android.location.LocationManager;\nclass A {\n    LocationManager lm;\n    void f() {\n        Location l = lm.getLastKnownLocation(\"gps\");\n    }\n}\n";

const UPLOAD: &str = "import com.google.firebase.storage.StorageReference;\nclass B {\n    StorageReference ref;\n    void f(byte[] data) {\n        ref.putBytes(data);\n    }\n}\n";

fn step(src: &str, method: &str, api: &ApiList) -> Result<WizardStep, String> {
    let unit = parse_unit(src, "Q.java");
    let calls = detect_api_calls(std::slice::from_ref(&unit), api);
    let call = calls
        .into_iter()
        .find(|c| c.spec.method_name() == Some(method))
        .ok_or_else(|| format!("{method} not detected"))?;
    Ok(WizardStep::new(call, BTreeSet::new()))
}

/// Problems with the menus and presets; empty when both match.
pub fn quickfix_mismatches() -> Vec<String> {
    let t = Taxonomy::bundled();
    let api = ApiList::bundled(&t);
    let mut out = Vec::new();
    match step(LOCATION, "getLastKnownLocation", &api) {
        Ok(s) => {
            let want = ["ApproximateLocation", "PreciseLocation", NONE_OF_THE_ABOVE];
            if s.menu() != want {
                out.push(format!("location menu {:?}, want {want:?}", s.menu()));
            }
        }
        Err(e) => out.push(e),
    }
    match step(UPLOAD, "putBytes", &api) {
        Ok(s) => {
            if s.target.spec.preset.transmitted_off_device != Some(true)
                || s.target.spec.preset.not_stored_in_backend != Some(false)
            {
                out.push(format!("putBytes preset {:?}", s.target.spec.preset));
            }
            if !s.preset_collection.transmitted_off_device || s.preset_collection.not_stored_in_backend {
                out.push(format!("putBytes pre-checked answers {:?}", s.preset_collection));
            }
        }
        Err(e) => out.push(e),
    }
    out
}

//! Seeded generator of Android-flavoured Java files with known planted API
//! calls, and character-level mutations of them.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct GeneratedFile {
    pub path: String,
    pub source: String,
    /// Fully qualified patterns of the planted calls, in file order.
    pub planted: Vec<&'static str>,
}

struct Api {
    import: &'static str,
    field_type: &'static str,
    field: &'static str,
    pattern: &'static str,
    /// Call text; `$` is replaced by the field name.
    call: &'static str,
    /// Type of the result, or `None` for a void call.
    result: Option<&'static str>,
}

const APIS: &[Api] = &[
    Api { import: "android.location.LocationManager", field_type: "LocationManager", field: "lm", pattern: "android.location.LocationManager.getLastKnownLocation", call: "$.getLastKnownLocation(\"gps\")", result: Some("android.location.Location") },
    Api { import: "android.telephony.TelephonyManager", field_type: "TelephonyManager", field: "tm", pattern: "android.telephony.TelephonyManager.getDeviceId", call: "$.getDeviceId()", result: Some("String") },
    Api { import: "android.telephony.TelephonyManager", field_type: "TelephonyManager", field: "tm", pattern: "android.telephony.TelephonyManager.getLine1Number", call: "$.getLine1Number()", result: Some("String") },
    Api { import: "android.telephony.SmsManager", field_type: "SmsManager", field: "sms", pattern: "android.telephony.SmsManager.sendTextMessage", call: "$.sendTextMessage(\"5550100\", null, label, null, null)", result: None },
    Api { import: "com.google.firebase.storage.StorageReference", field_type: "StorageReference", field: "storageRef", pattern: "com.google.firebase.storage.StorageReference.putBytes", call: "$.putBytes(payload)", result: Some("Object") },
    Api { import: "okhttp3.OkHttpClient", field_type: "OkHttpClient", field: "http", pattern: "okhttp3.OkHttpClient.newCall", call: "$.newCall(request)", result: Some("Object") },
    Api { import: "android.content.pm.PackageManager", field_type: "PackageManager", field: "pm", pattern: "android.content.pm.PackageManager.getInstalledApplications", call: "$.getInstalledApplications(0)", result: Some("java.util.List<?>") },
    Api { import: "android.content.ClipboardManager", field_type: "ClipboardManager", field: "clipboard", pattern: "android.content.ClipboardManager.getPrimaryClip", call: "$.getPrimaryClip()", result: Some("Object") },
    Api { import: "com.google.android.gms.location.FusedLocationProviderClient", field_type: "FusedLocationProviderClient", field: "fused", pattern: "com.google.android.gms.location.FusedLocationProviderClient.getLastLocation", call: "$.getLastLocation()", result: Some("Object") },
];

const WORDS: &[&str] = &[
    "recipe", "basket", "widget", "order", "panel", "cache", "marker", "ticket", "course", "layer", "track", "grade",
];

fn word(rng: &mut StdRng) -> &'static str {
    WORDS[rng.gen_range(0..WORDS.len())]
}

fn cap(w: &str) -> String {
    let mut c = w.chars();
    c.next().map(|f| f.to_ascii_uppercase().to_string() + c.as_str()).unwrap_or_default()
}

/// One filler statement group at `ind`. Never calls an API list method.
fn filler(rng: &mut StdRng, ind: &str, n: usize, out: &mut Vec<String>) {
    let w = word(rng);
    match rng.gen_range(0..10) {
        0 => out.push(format!("{ind}int {w}{n} = Math.max(count, {});", rng.gen_range(0..100))),
        1 => {
            out.push(format!("{ind}for (int i = 0; i < names.size(); i++) {{"));
            out.push(format!("{ind}    total += names.get(i).length() * {};", rng.gen_range(1..9)));
            out.push(format!("{ind}}}"));
        }
        2 => {
            out.push(format!("{ind}if (total > {} && !label.isEmpty()) {{", rng.gen_range(0..50)));
            out.push(format!("{ind}    label = label.trim() + \"-{w}\";"));
            out.push(format!("{ind}}} else {{"));
            out.push(format!("{ind}    label = String.valueOf(total);"));
            out.push(format!("{ind}}}"));
        }
        3 => out.push(format!("{ind}// keep {w} results sorted for display")),
        4 => {
            out.push(format!("{ind}try {{"));
            out.push(format!("{ind}    total = Integer.parseInt(\"{}\");", rng.gen_range(0..999)));
            out.push(format!("{ind}}} catch (NumberFormatException e) {{"));
            out.push(format!("{ind}    total = -1;"));
            out.push(format!("{ind}}}"));
        }
        5 => out.push(format!("{ind}Runnable r{n} = () -> total += {};", rng.gen_range(1..5))),
        6 => out.push(format!("{ind}String s{n} = total > 3 ? \"{w}\\n\" : 'x' + \"\\\"{w}\\\"\";")),
        7 => {
            out.push(format!("{ind}/* {w} block"));
            out.push(format!("{ind} * spanning lines */"));
            out.push(format!("{ind}char c{n} = '\\'';"));
        }
        8 => {
            out.push(format!("{ind}switch (total % 3) {{"));
            out.push(format!("{ind}    case 0: label = \"{w}\"; break;"));
            out.push(format!("{ind}    default: label = label.toUpperCase();"));
            out.push(format!("{ind}}}"));
        }
        _ => {
            out.push(format!("{ind}java.util.List<java.util.Map<String, Integer>> m{n} = new java.util.ArrayList<>();"));
            out.push(format!("{ind}m{n}.forEach(x -> total += x.size());"));
        }
    }
}

/// A file of roughly `target_lines` lines. Same `(seed, index)`, same file.
pub fn generate_file(seed: u64, index: usize, target_lines: usize) -> GeneratedFile {
    let mut rng = StdRng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let class = format!("{}{}{index}", cap(word(&mut rng)), cap(word(&mut rng)));
    let mut used: Vec<&Api> = Vec::new();
    let mut body: Vec<String> = Vec::new();
    let mut planted = Vec::new();
    let mut n = 0usize;
    let mut method = 0usize;
    while body.len() + 20 < target_lines {
        method += 1;
        body.push(String::new());
        body.push(format!("    void step{method}(String label, byte[] payload, Object request) {{"));
        let stmts = rng.gen_range(2..8);
        for _ in 0..stmts {
            n += 1;
            if rng.gen_bool(0.2) {
                let api = &APIS[rng.gen_range(0..APIS.len())];
                let call = api.call.replace('$', api.field);
                match (api.result, rng.gen_range(0..3)) {
                    (Some(t), 0 | 1) => body.push(format!("        {t} v{n} = {call};")),
                    _ => body.push(format!("        {call};")),
                }
                planted.push(api.pattern);
                if !used.iter().any(|u| u.field == api.field) {
                    used.push(api);
                }
            } else {
                filler(&mut rng, "        ", n, &mut body);
            }
        }
        body.push("    }".to_string());
    }
    let pkg = format!("com.example.gen{}", index % 17);
    let mut lines = vec![format!("package {pkg};"), String::new()];
    let mut imports: Vec<&str> = used.iter().map(|a| a.import).collect();
    imports.push("java.util.List");
    imports.sort();
    imports.dedup();
    lines.extend(imports.iter().map(|i| format!("import {i};")));
    lines.push(String::new());
    lines.push(format!("/** Generated {} screen. */", word(&mut rng)));
    lines.push(format!("public class {class} {{"));
    for api in &used {
        lines.push(format!("    private {} {};", api.field_type, api.field));
    }
    lines.push("    private List<String> names;".to_string());
    lines.push("    private int total;".to_string());
    lines.push("    private int count;".to_string());
    lines.extend(body);
    lines.push(String::new());
    lines.push(format!("    enum Mode {{ {}, {} }}", word(&mut rng).to_uppercase(), "IDLE"));
    lines.push("}".to_string());
    let mut source = lines.join("\n");
    source.push('\n');
    GeneratedFile {
        path: format!("src/{}/{class}.java", pkg.replace('.', "/")),
        source,
        planted,
    }
}

const FRAGMENTS: &[&str] = &[
    "{", "}", "(", ")", "\"", "'", "/*", "*/", "//", ";", "@", "<", ">", "\"\"\"", "\\", "->", "\n", "é", "𝄞", "@DataAccess(", ".",
    ",", "class ", "new ", "=", "[]", "::", "\u{0}",
];

/// Apply one to four random edits: deletion, fragment insertion,
/// duplication or truncation. Always valid UTF-8.
pub fn mutate(source: &str, rng: &mut StdRng) -> String {
    let mut chars: Vec<char> = source.chars().collect();
    for _ in 0..rng.gen_range(1..=4) {
        let len = chars.len();
        if len == 0 {
            break;
        }
        let at = rng.gen_range(0..len);
        match rng.gen_range(0..4) {
            0 => {
                let end = (at + rng.gen_range(1..20)).min(len);
                chars.drain(at..end);
            }
            1 => {
                let f = FRAGMENTS[rng.gen_range(0..FRAGMENTS.len())];
                chars.splice(at..at, f.chars());
            }
            2 => {
                let end = (at + rng.gen_range(1..60)).min(len);
                let copy: Vec<char> = chars[at..end].to_vec();
                let to = rng.gen_range(0..len);
                chars.splice(to..to, copy);
            }
            _ => chars.truncate(at),
        }
    }
    chars.into_iter().collect()
}

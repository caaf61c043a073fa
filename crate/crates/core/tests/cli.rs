use std::process::Command;

fn hpp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hpp")).args(args).output().expect("runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn exit_codes_follow_the_outcome() {
    assert_eq!(hpp(&["check", "K4"]).0, 0);
    assert_eq!(hpp(&["hyperbolicity", "K4"]).0, 2);
    assert_eq!(hpp(&["hyperbolicity", "F7"]).0, 0);
    assert_eq!(hpp(&["check", "no-such-matroid"]).0, 1);
    assert_eq!(hpp(&["sos", "U24", "--i", "1", "--j", "1"]).0, 1);
}

#[test]
fn saved_certificates_verify_only_against_their_matroid() {
    let dir = std::env::temp_dir().join(format!("hpp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("u35.json");
    let path = report.to_str().unwrap();
    let (code, text) = hpp(&["sos", "U35", "--i", "1", "--j", "2", "--json", path]);
    assert_eq!(code, 0, "{text}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["result"]["certificate"]["type"], "sos");
    assert_eq!(hpp(&["verify", path, "U35"]).0, 0);
    assert_eq!(hpp(&["verify", path, "U36"]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn face_and_ingleton_report() {
    let (code, text) = hpp(&["face", "F7", "--flat", "1,2,3"]);
    assert_eq!(code, 0);
    assert!(text.contains("matches the face matroid: true"), "{text}");
    let (code, text) = hpp(&["ingleton", "V8"]);
    assert_eq!(code, 0);
    assert!(text.contains("15 < 16") && text.contains("Vámos-like: true"), "{text}");
}

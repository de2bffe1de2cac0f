//! Compiles a small C program against the generated header and the static
//! library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "deligne.h"

int main(void) {
    DlTask *task = NULL;
    const char *text = "family = \"P2\"\ntwists = [2, 3]\n";
    if (dl_task_parse(text, &task) != DL_STATUS_OK) return 10;
    char *json = NULL;
    if (dl_run(task, "intersect", &json) != DL_STATUS_OK) return 11;
    int ok = strstr(json, "\"delta\": 6") != NULL;
    dl_string_free(json);
    dl_task_free(task);
    if (dl_task_parse("x0^^2", &task) != DL_STATUS_INPUT_ERROR) return 12;
    if (dl_last_error_message() == NULL) return 13;
    printf("%s\n", dl_version());
    return ok ? 0 : 14;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = lib_dir.join("libdeligne_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), env!("CARGO_PKG_VERSION"));
}

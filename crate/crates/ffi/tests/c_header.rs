//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "blinfty.h"

int main(void) {
    BlDocument *doc = NULL;
    if (bl_fixture("fixtureA", &doc) != BL_STATUS_OK) return 10;
    BlBounded t;
    if (bl_torsion(doc, 3, 2, &t) != BL_STATUS_OK) return 11;
    if (t.kind != BL_BOUNDED_KIND_EXACT || t.level != 1) return 12;
    char *text = NULL;
    if (bl_document_serialize(doc, &text) != BL_STATUS_OK) return 13;
    if (strncmp(text, "format blinfty 1\n", 17) != 0) return 14;
    bl_string_free(text);
    bl_document_free(doc);

    if (bl_document_parse("format blinfty 2\n", &doc) != BL_STATUS_PARSE) return 15;
    if (strlen(bl_last_error()) == 0) return 16;

    char *v = NULL;
    if (bl_hierarchy_combine("1^PT", "3^SD", &v) != BL_STATUS_OK) return 17;
    printf("%s\n", v);
    bl_string_free(v);
    return 0;
}
"#;

fn artifact_dir() -> PathBuf {
    // target/<profile>/deps/<this test> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = artifact_dir().join("libblinfty_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_header");
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let bin = work.join("main");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c11", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1^PT\n");
}

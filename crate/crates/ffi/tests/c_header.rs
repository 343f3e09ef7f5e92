//! Compiles a small C program against the generated header and, when the
//! static library is present next to the test binary, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "poisson_ffi.h"

int main(void) {
    const char *so3 = "{\"dim\":3,\"basis\":[\"e1\",\"e2\",\"e3\"],\"brackets\":["
        "{\"i\":0,\"j\":1,\"coeffs\":{\"2\":\"1\"}},"
        "{\"i\":0,\"j\":2,\"coeffs\":{\"1\":\"-1\"}},"
        "{\"i\":1,\"j\":2,\"coeffs\":{\"0\":\"1\"}}]}";
    PoissonLieAlgebra *g = NULL;
    if (poisson_lie_algebra_from_json(so3, &g) != POISSON_STATUS_OK) return 10;
    size_t h2 = 99;
    if (poisson_lie_algebra_cohomology_dim(g, 2, &h2) != POISSON_STATUS_OK || h2 != 0) return 11;
    PoissonStructure *p = NULL;
    if (poisson_structure_from_lie_algebra(g, &p) != POISSON_STATUS_OK) return 12;
    char *verdict = NULL;
    if (poisson_structure_classify_json(p, NULL, &verdict) != POISSON_STATUS_OK) return 13;
    if (strstr(verdict, "\"Stable\"") == NULL) return 14;
    poisson_string_free(verdict);
    if (poisson_lie_algebra_from_json("{", &g) != POISSON_STATUS_PARSE_ERROR) return 15;
    if (strlen(poisson_last_error_message()) == 0) return 16;
    poisson_structure_free(p);
    poisson_lie_algebra_free(g);
    printf("ok\n");
    return 0;
}
"#;

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .map(String::from)
}

fn target_dir() -> PathBuf {
    // the test binary lives in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header does not compile");

    let lib = target_dir().join("libpoisson_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping link step", lib.display());
        return;
    }
    let exe = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "smoke program exited with {:?}",
        out.status
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}

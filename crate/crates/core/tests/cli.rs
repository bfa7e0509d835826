use rrspace::cli::run;
use rrspace::gf::Field;
use rrspace::polyring::parse_trihomog;
use std::path::PathBuf;

fn workdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("rrspace-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn write(dir: &PathBuf, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["rrspace"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const CUSP: &str = "field = GF(2)\nF = y^3 + x^3 + x^2*z\n";

#[test]
fn example_commands() {
    let d = workdir("example");
    let c = write(&d, "cusp.curve", CUSP);
    let div = write(&d, "d.div", "# the smooth point on y = 0\npoint=(1:0:1) branch=0 mult=1\n");
    let (code, out, _) = cli(&["adjoint", &c]);
    assert_eq!(code, 0);
    assert_eq!(out, "A = 2*P((0:0:1),0)\ngenus = 0\n");
    let (code, out, _) = cli(&["divisor", &c, "y"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Div(y) = 2*P((0:0:1),0) + 1*P((1:0:1),0)\n");
    let (code, out, _) = cli(&["rrbasis", &c, &div]);
    assert_eq!(code, 0);
    assert!(out.contains("H = y\n") && out.contains("l = 2\n"), "{out}");
    assert!(out.contains("G1 = y\nG2 = x\n") && out.contains("verified = true"), "{out}");
}

#[test]
fn printed_polynomials_reparse() {
    let d = workdir("reparse");
    let c = write(&d, "conic.curve", "field = GF(5)\nF = x^2 + y*z\n");
    let div = write(&d, "d.div", "point=(0:1:0) mult=2\npoint=(1:4:1) mult=1\n");
    let (code, out, _) = cli(&["rrbasis", &c, &div]);
    assert_eq!(code, 0, "{out}");
    let f = Field::prime(5).unwrap();
    let mut n = 0;
    for line in out.lines() {
        if let Some((k, v)) = line.split_once(" = ") {
            if k == "H" || k.starts_with('G') {
                let p = parse_trihomog(v, f).unwrap();
                assert_eq!(p.to_string(), v);
                n += 1;
            }
        }
    }
    assert_eq!(n, 5);
}

#[test]
fn same_seed_same_bytes() {
    let d = workdir("determinism");
    let c = write(&d, "ell.curve", "field = GF(5)\nF = y^2*z - x^3 - x*z^2 - z^3\n");
    let div = write(&d, "d.div", "point=(0:1:0) mult=3\n");
    let runs = [
        vec!["--seed", "11", "agcode", &c, &div],
        vec!["--seed", "11", "share", "ag", &c, &div, "--secret", "2", "--secret-point", "(0:1:1)"],
        vec!["--seed", "5", "share", "shamir", "--field", "GF(101)", "--secret", "9", "--threshold", "3", "--ids", "1,2,3,4"],
    ];
    for args in runs {
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a.0, 0, "{}", a.2);
        assert_eq!(a, b);
    }
}

#[test]
fn exit_codes() {
    let d = workdir("codes");
    let c = write(&d, "cusp.curve", CUSP);
    assert_eq!(cli(&["adjoint", &write(&d, "bad.curve", "field = GF(6)\nF = x\n")]).0, 2);
    assert_eq!(cli(&["divisor", &c, "x +"]).0, 2);
    assert_eq!(cli(&["nosuch"]).0, 2);
    assert_eq!(cli(&["places", &c, "(0:1:1)"]).0, 3);
    assert_eq!(cli(&["rrbasis", &c, &write(&d, "off.div", "point=(1:1:1) mult=1\n")]).0, 3);
    assert_eq!(cli(&["rrbasis", &c, &write(&d, "zero.div", "point=(1:0:1) mult=0\n")]).0, 2);
    assert_eq!(cli(&["rrbasis", &c, &write(&d, "br.div", "point=(1:0:1) branch=1 mult=1\n")]).0, 3);
    let red = write(&d, "red.curve", "field = GF(3)\nF = x^2 + 2*x*y + y^2\n");
    assert_eq!(cli(&["adjoint", &red]).0, 3);
    let ids = ["share", "shamir", "--field", "GF(7)", "--secret", "1", "--threshold", "2", "--ids", "1,1"];
    assert_eq!(cli(&ids).0, 3);
    // a tiny precision cap is too small for the adjoint valuations
    let (code, _, err) = cli(&["--prec-cap", "2", "adjoint", &c]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn places_listing() {
    let d = workdir("places");
    let c = write(&d, "node.curve", "field = GF(5)\nF = y^2*z - x^3 - x^2*z\n");
    let (code, out, _) = cli(&["places", &c, "(0:0:1)", "--terms", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("ramification 1").count(), 2, "{out}");
    assert!(out.starts_with("center = (0:0:1)\n"));
}

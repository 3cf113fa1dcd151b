use std::path::Path;
use std::process::{Command, Output};

fn bellpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bellpair")).args(args).output().unwrap()
}

fn out_arg(dir: &Path) -> String {
    format!("out={}", dir.display())
}

fn rows(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let data = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    (header, data)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn decoupled_bell_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let o = bellpair(&[
        "simulate", "N=64", "lambda1=0", "lambda2=0", "alpha=0.7853981633974483", "nh=2", "ns=2", "tmax=6.283",
        "steps=10", "seed=1", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("wall time"));
    assert!(stdout(&o).contains("P_mean="));
    let (header, data) = rows(&dir.path().join("aggregate.csv"));
    assert_eq!(header, "t,P_mean,P_stderr,C_mean,C_stderr,n");
    assert_eq!(data.len(), 11);
    for r in data {
        assert!((r[1] - 1.0).abs() < 1e-10 && (r[3] - 1.0).abs() < 1e-10);
        assert_eq!(r[5], 4.0);
    }
    assert!(!dir.path().join("records.csv").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["simulate", "N=16", "lambda1=0.2", "alpha=pi/8", "nh=3", "ns=4", "tmax=2tauH", "steps=12", "seed=9", "records=true"];
    for d in [&a, &b] {
        let mut v = args.to_vec();
        let o = out_arg(d.path());
        v.push(&o);
        assert_eq!(bellpair(&v).status.code(), Some(0));
    }
    for f in ["aggregate.csv", "records.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let (header, data) = rows(&a.path().join("records.csv"));
    assert_eq!(header, "h_index,s_index,t,P,C");
    assert_eq!(data.len(), 3 * 4 * 13);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(
        &conf,
        "# preset\nN = 12\nlambda1 = 0.0   # overridden below\nalpha = bell\ntimes = 0,1,2\nnh = 1\nns = 1\n",
    )
    .unwrap();
    let o = bellpair(&["simulate", "--config", conf.to_str().unwrap(), "--lambda1", "0.5", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, data) = rows(&dir.path().join("aggregate.csv"));
    assert_eq!(data.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![0.0, 1.0, 2.0]);
    assert!(data[2][1] < 0.99, "override not applied");
}

#[test]
fn usage_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = out_arg(dir.path());
    let cases: [(&[&str], &str); 6] = [
        (&["simulate", "N=8", "lambda1=0.1", "alpha=bell", "tmax=1", "steps=2", "colour=red"], "colour"),
        (&["simulate", "N=8", "alpha=bell", "tmax=1", "steps=2"], "lambda1"),
        (&["simulate", "N=8", "lambda1=x", "alpha=bell", "tmax=1", "steps=2"], "lambda1"),
        (&["simulate", "N=8", "lambda1=0.1", "alpha=2", "tmax=1", "steps=2"], "alpha"),
        (&["simulate", "N=1", "lambda1=0.1", "alpha=bell", "tmax=1", "steps=2"], "N"),
        (&["spectra", "N=16"], "samples"),
    ];
    for (args, key) in cases {
        let mut v = args.to_vec();
        v.push(&out);
        let o = bellpair(&v);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(key), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(bellpair(&[]).status.code(), Some(2));
    assert_eq!(bellpair(&["plot"]).status.code(), Some(2));
    assert_eq!(bellpair(&["--help"]).status.code(), Some(0));
}

#[test]
fn theory_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = bellpair(&["theory", "lambda1=0.025", "alpha=bell", "times=0,1,12.566370614359172", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, data) = rows(&dir.path().join("theory.csv"));
    assert_eq!(header, "t,P_LR,P_ELR,C_ELR");
    assert_eq!(data[0], vec![0.0, 1.0, 1.0, 1.0]);
    assert!((data[1][1] - 0.98812).abs() < 1e-5);

    let o = bellpair(&["theory", "lambda1=0", "alpha=pi/8", "tmax=3tauH", "steps=9", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let (_, data) = rows(&dir.path().join("theory.csv"));
    assert_eq!(data.len(), 10);
    for r in &data {
        assert_eq!(&r[1..], &data[0][1..]);
    }

    let o = bellpair(&["theory", "lambda1=0.1", "lambda2=0.05", "tau_h2=3", "alpha=product", "tmax=5", "steps=5", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cp_diagram_collapses_with_environment_size() {
    let dir = tempfile::tempdir().unwrap();
    let o = bellpair(&[
        "cpdiagram", "Ns=16,64,128", "lambda1=0.3", "alpha=bell", "tmax=3", "steps=40", "seed=3", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let (header, werner) = rows(&dir.path().join("werner_reference.csv"));
    assert_eq!(header, "P,C");
    assert_eq!(werner.len(), 200);
    assert_eq!(werner[0], vec![0.25, 0.0]);
    assert_eq!(werner[199], vec![1.0, 1.0]);
    for r in &werner {
        if r[0] <= 1.0 / 3.0 {
            assert_eq!(r[1], 0.0);
        }
    }
    let near = werner.iter().min_by(|a, b| (a[0] - 1.0 / 3.0).abs().total_cmp(&(b[0] - 1.0 / 3.0).abs())).unwrap();
    assert!(near[1] < 0.01);

    let mut deviations = Vec::new();
    for n in [16, 64, 128] {
        let (header, data) = rows(&dir.path().join(format!("cp_N{n}.csv")));
        assert_eq!(header, "t,P_mean,C_mean");
        assert_eq!(data.len(), 41);
        let dev = data
            .iter()
            .filter(|r| (0.55..=0.95).contains(&r[1]))
            .map(|r| (r[2] - ((12.0 * r[1] - 3.0).sqrt() - 1.0) / 2.0).abs())
            .fold(0.0, f64::max);
        deviations.push(dev);
    }
    // slack of 0.002 for sampling noise
    assert!(deviations.windows(2).all(|w| w[1] <= w[0] + 0.002), "{deviations:?}");
    assert!(deviations[2] <= 0.05);
}

#[test]
fn spectra_dump_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let o = bellpair(&["spectra", "N=64", "samples=10", "seed=5", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, eig) = rows(&dir.path().join("eigenvalues.csv"));
    assert_eq!(header, "sample,E");
    assert_eq!(eig.len(), 640);
    assert!(stdout(&o).contains("central mean spacing"));

    let o = bellpair(&["spectra", "N=128", "samples=100", "seed=6", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let (header, hist) = rows(&dir.path().join("spacing_histogram.csv"));
    assert_eq!(header, "bin_lo,bin_hi,count,fraction");
    assert!(hist[0][3] < 0.01, "first bin fraction {}", hist[0][3]);
    let total: f64 = hist.iter().map(|r| r[3]).sum();
    assert!(total > 0.99 && total <= 1.0 + 1e-12);
}

#[test]
fn validate_exit_codes() {
    let small = ["concurrence_samples=50", "spectral_samples=20"];
    let o = bellpair(&["validate", small[0], small[1]]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);

    let o = bellpair(&["validate", small[0], small[1], "force_fail=true"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL forced failure"));
}

#[test]
fn two_environment_mode() {
    let dir = tempfile::tempdir().unwrap();
    let o = bellpair(&[
        "simulate", "mode=two-env", "N1=12", "N2=8", "lambda1=0.2", "lambda2=0.3", "alpha=bell", "nh=2", "ns=2",
        "tmax=5", "steps=5", &out_arg(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, data) = rows(&dir.path().join("aggregate.csv"));
    assert!(data[5][1] < data[0][1]);
}

#[test]
fn shipped_presets_parse() {
    use bellpair::cli::CliConfig;
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let presets = [
        ("fig1_crossover", &["simulate", "theory"][..]),
        ("fig1_fgr", &["simulate", "theory"]),
        ("fig2_cp", &["cpdiagram"]),
        ("fig3_concurrence", &["simulate", "theory"]),
    ];
    for (name, subcommands) in presets {
        let path = dir.join(format!("{name}.conf"));
        for sub in subcommands {
            let args = vec![sub.to_string(), "--config".into(), path.display().to_string()];
            let cfg = CliConfig::from_args(&args).unwrap_or_else(|e| panic!("{name} {sub}: {e}"));
            if *sub == "simulate" {
                cfg.run_config().unwrap();
            }
        }
    }
}

//! Reference approximants kept as exact-coefficient fixtures.
//!
//! These are the externally published `[8/8]` approximant of the x-velocity
//! and `[10/10]` approximant of the y-velocity for the all-ones parameter
//! case, transcribed term by term as exact rationals. They are data, not
//! pipeline output: the coefficient identities checked in the test suites
//! guard the transcription against typos, and the analysis module compares
//! them numerically against the closed-form velocities.

use std::fmt;
use std::str::FromStr;

use super::RationalFn;
use crate::algebra::Rat;

/// Which reference approximant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureId {
    /// `[8/8]` in the x-velocity.
    Vx88,
    /// `[10/10]` in the y-velocity.
    Vy1010,
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Vx88 => write!(f, "vx88"),
            FixtureId::Vy1010 => write!(f, "vy1010"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vx88" => Ok(FixtureId::Vx88),
            "vy1010" => Ok(FixtureId::Vy1010),
            other => Err(format!("unknown fixture {other:?}: expected vx88 or vy1010")),
        }
    }
}

fn rats(entries: &[&str]) -> Vec<Rat> {
    entries.iter().map(|s| s.parse().expect("fixture literal")).collect()
}

const VX88_NUMER: &[&str] = &[
    "1",
    "80630168/150869313",
    "-94677997/258633108",
    "130919939/1508693130",
    "-1097649283/94142451312",
    "352444733/353034192420",
    "-573969527/10355669644320",
    "29057689/15533504466480",
    "-213287989/7117169319187200",
];

const VX88_DENOM: &[&str] = &[
    "1",
    "80630168/150869313",
    "34638557/258633108",
    "10391023/502897710",
    "203299561/94142451312",
    "55668097/353034192420",
    "27350129/3451889881440",
    "786311/3106700893296",
    "24009973/6022220193158400",
];

const VY1010_NUMER: &[&str] = &[
    "1",
    "-617044058999277705/383360519991315667",
    "28813203934779614633/29135399519339990692",
    "-706520298740306571137/1485905375486339525292",
    "158825071969373483159/1485905375486339525292",
    "-8660567629020972911/782055460782283960680",
    "16420817408783354039/71323458023344297214016",
    "87188708731614445057/1248160515408525201245280",
    "-1062628804263470249167/129808693602486620929509120",
    "56968766216441448797/146034780302797448545697760",
    "-260048516288380772873/36717316190417644205775436800",
];

const VY1010_DENOM: &[&str] = &[
    "1",
    "149676980983353629/383360519991315667",
    "7861005765239380203/29135399519339990692",
    "215683905534451894091/1485905375486339525292",
    "22009213655154354015/495301791828779841764",
    "42598825941687607239/4953017918287798417640",
    "404907655928398513021/356617290116721486070080",
    "43862642271172589551/416053505136175067081760",
    "883706266259083441033/129808693602486620929509120",
    "16590820145764536325/58413912121118979418279104",
    "307482708619550706343/51404242666584701888085611520",
];

/// The transcribed reference approximant.
pub fn fixture(id: FixtureId) -> RationalFn {
    let (numer, denom) = match id {
        FixtureId::Vx88 => (VX88_NUMER, VX88_DENOM),
        FixtureId::Vy1010 => (VY1010_NUMER, VY1010_DENOM),
    };
    RationalFn::new(rats(numer), rats(denom)).expect("fixture denominators start at 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExpPoly;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn vx88_coefficient_identities() {
        let f = fixture(FixtureId::Vx88);
        assert_eq!(f.degrees(), (8, 8));
        // series of (1+t)e^{-t} starts 1, 0, -1/2: the matching condition
        // forces N1 - D1 = 0 and N2 - D2 = -1/2.
        assert_eq!(&f.numer()[1] - &f.denom()[1], Rat::zero());
        assert_eq!(&f.numer()[2] - &f.denom()[2], q(-1, 2));
    }

    #[test]
    fn vy1010_coefficient_identities() {
        let f = fixture(FixtureId::Vy1010);
        assert_eq!(f.degrees(), (10, 10));
        // series of (1-t)e^{-t} starts 1, -2, 3/2
        let c1 = &f.numer()[1] - &f.denom()[1];
        assert_eq!(c1, r(-2));
        let c2 = &(&f.numer()[2] - &f.denom()[2]) - &(&f.denom()[1] * &c1);
        assert_eq!(c2, q(3, 2));
    }

    #[test]
    fn fixtures_expand_like_the_closed_form_velocities() {
        let vx = ExpPoly::term(r(-1), vec![r(1), r(1)]); // (1+t)e^{-t}
        let vy = ExpPoly::term(r(-1), vec![r(1), r(-1)]); // (1-t)e^{-t}
        assert_eq!(
            fixture(FixtureId::Vx88).maclaurin(4).coeffs(),
            vx.maclaurin(4).coeffs()
        );
        assert_eq!(
            fixture(FixtureId::Vy1010).maclaurin(4).coeffs(),
            vy.maclaurin(4).coeffs()
        );
    }

    #[test]
    fn vx88_denominator_positive_so_no_pole_for_positive_t() {
        let f = fixture(FixtureId::Vx88);
        assert!(f.denom().iter().all(Rat::is_positive));
        for k in 0..=100 {
            let t = 0.5 * k as f64;
            f.eval(t).unwrap();
        }
    }

    #[test]
    fn vx88_value_at_zero_and_one() {
        let f = fixture(FixtureId::Vx88);
        assert_eq!(f.eval(0.0).unwrap(), 1.0);
        // exact x-velocity at t = 1 is 2/e
        let err = (f.eval(1.0).unwrap() - 0.7357588823428847).abs();
        assert!(err <= 1e-3, "err = {err}");
    }

    #[test]
    fn fixture_id_round_trip() {
        for id in [FixtureId::Vx88, FixtureId::Vy1010] {
            assert_eq!(id.to_string().parse::<FixtureId>().unwrap(), id);
        }
        assert!("vx99".parse::<FixtureId>().is_err());
    }
}

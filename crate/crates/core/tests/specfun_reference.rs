//! Bessel values frozen from an independent arbitrary-precision evaluation.

use bpint_core::specfun::{bessel_j, spherical_j, Order};

const BESSEL_J: &[(f64, f64, f64)] = &[
    (0.0, 0.1, 0.997501562066040032),
    (0.0, 1.0, 0.76519768655796655145),
    (0.0, 2.5, -0.048383776468197996327),
    (0.0, 7.9, 0.19436184484127823969),
    (0.0, 8.1, 0.1475174540443776703),
    (0.0, 12.0, 0.047689310796833536624),
    (0.0, 19.9, 0.17287775639261846235),
    (0.0, 20.1, 0.15953606793729709074),
    (0.0, 30.0, -0.086367983581040211336),
    (0.0, 49.0, -0.052900033322273515066),
    (0.0, 75.0, 0.034643913805097056137),
    (0.0, 150.0, -0.00077409037539429124695),
    (0.0, 1000.0, 0.024786686152420174561),
    (1.0, 0.1, 0.049937526036242000321),
    (1.0, 1.0, 0.44005058574493351596),
    (1.0, 2.5, 0.49709410246427403801),
    (1.0, 7.9, 0.21917939992175120327),
    (1.0, 8.1, 0.24760776698159287663),
    (1.0, 12.0, -0.22344710449062761237),
    (1.0, 19.9, 0.050117424807379740922),
    (1.0, 20.1, 0.082801005760209763489),
    (1.0, 30.0, -0.11875106261662293652),
    (1.0, 49.0, -0.10150612803431055647),
    (1.0, 75.0, -0.085139995044829103941),
    (1.0, 150.0, -0.065145163657727360305),
    (1.0, 1000.0, 0.0047283119070895239176),
    (2.0, 0.1, 0.001248958658799918984),
    (2.0, 1.0, 0.11490348493190048047),
    (2.0, 2.5, 0.44605905843961722674),
    (2.0, 7.9, -0.1388733891648855325),
    (2.0, 8.1, -0.086379733802009056103),
    (2.0, 12.0, -0.084930494878604805352),
    (2.0, 19.9, -0.16784082927629889004),
    (2.0, 20.1, -0.15129716189150507505),
    (2.0, 30.0, 0.078451246073265348901),
    (2.0, 49.0, 0.048756926055566961741),
    (2.0, 75.0, -0.036914313672959165576),
    (2.0, 150.0, -0.000094511806708740223781),
    (2.0, 1000.0, -0.024777229528605995513),
    (4.0, 0.1, 2.6028648545684038116e-7),
    (4.0, 1.0, 0.0024766389641099550438),
    (4.0, 2.5, 0.073781880054255232704),
    (4.0, 7.9, -0.080996261472003732812),
    (4.0, 8.1, -0.12863095186410330269),
    (4.0, 12.0, 0.18249896464415114398),
    (4.0, 19.9, 0.14255813332257975307),
    (4.0, 20.1, 0.11759271601126097699),
    (4.0, 30.0, -0.052609000321320352293),
    (4.0, 49.0, -0.035840238064138011018),
    (4.0, 75.0, 0.043568012204874201451),
    (4.0, 150.0, 0.0027002175404240119797),
    (4.0, 1000.0, 0.024748265003654771826),
    (10.0, 0.1, 2.690532895434217073e-20),
    (10.0, 1.0, 2.630615123687453207e-10),
    (10.0, 2.5, 2.2247284173983832948e-6),
    (10.0, 7.9, 0.055869872504109695978),
    (10.0, 8.1, 0.065942923604934146808),
    (10.0, 12.0, 0.30047603527126931073),
    (10.0, 19.9, 0.18259078806620767458),
    (10.0, 20.1, 0.18896064569487126697),
    (10.0, 30.0, -0.12987689399858876819),
    (10.0, 49.0, -0.059337894918979000815),
    (10.0, 75.0, -0.080417867891894454548),
    (10.0, 150.0, -0.020612788945218587404),
    (10.0, 1000.0, -0.024520622306036558192),
    (0.5, 0.1, 0.25189294032600095267),
    (0.5, 1.0, 0.67139670714180309042),
    (0.5, 2.5, 0.30200490606236568126),
    (0.5, 7.9, 0.28357406114746262686),
    (0.5, 8.1, 0.27190672494657985573),
    (0.5, 12.0, -0.12358853595594194375),
    (0.5, 19.9, 0.15518692991940252895),
    (0.5, 20.1, 0.16891384247363806068),
    (0.5, 30.0, -0.14392965337039988914),
    (0.5, 49.0, -0.10871207378022270294),
    (0.5, 75.0, -0.035727009681702580969),
    (0.5, 150.0, -0.046572055895600107672),
    (0.5, 1000.0, 0.02086326660509382773),
    (1.5, 0.1, 0.0084020343015001435986),
    (1.5, 1.0, 0.2402978391234270109),
    (1.5, 2.5, 0.52508026466400314595),
    (1.5, 7.9, 0.048954285208812210012),
    (1.5, 8.1, 0.10184586201251443068),
    (1.5, 12.0, -0.20466344849652968759),
    (1.5, 19.9, -0.081128373869961532532),
    (1.5, 20.1, -0.047638625552985323423),
    (1.5, 30.0, -0.027267945711177687796),
    (1.5, 49.0, -0.036481206571403642274),
    (1.5, 75.0, -0.085398939051136249289),
    (1.5, 150.0, -0.045864573772034219353),
    (1.5, 1000.0, -0.014168706104322200496),
    (2.5, 0.1, 0.00016808871900334129365),
    (2.5, 1.0, 0.049496810228477942271),
    (2.5, 2.5, 0.32809141153443809388),
    (2.5, 7.9, -0.26498382625804026946),
    (2.5, 8.1, -0.23418603531231525012),
    (2.5, 12.0, 0.072422673831809521857),
    (2.5, 19.9, -0.16741733804050225835),
    (2.5, 20.1, -0.17602408509348661591),
    (2.5, 30.0, 0.14120285879928212036),
    (2.5, 49.0, 0.10647853052074901056),
    (2.5, 75.0, 0.032311052119657130998),
    (2.5, 150.0, 0.045654764420159423285),
    (2.5, 1000.0, -0.020905772723406794331),
    (0.3, 0.1, 0.45272574599459660724),
    (0.3, 1.0, 0.74022247928102045347),
    (0.3, 2.5, 0.17564108274377366137),
    (0.3, 7.9, 0.26648449385751421104),
    (0.3, 8.1, 0.23880625475427755761),
    (0.3, 12.0, -0.058942057108976803358),
    (0.3, 19.9, 0.17490537507326934798),
    (0.3, 20.1, 0.17794129598472678105),
    (0.3, 30.0, -0.13011079142417547186),
    (0.3, 49.0, -0.092909957341861876784),
    (0.3, 75.0, -0.0078337430844738668392),
    (0.3, 150.0, -0.030246391350782191486),
    (0.3, 1000.0, 0.024226398849887748861),
    (3.7, 0.1, 9.9437991190052234601e-7),
    (3.7, 1.0, 0.004726869882950518179),
    (3.7, 2.5, 0.10501875574055597619),
    (3.7, 7.9, -0.16745842580173726966),
    (3.7, 8.1, -0.20596531810594993414),
    (3.7, 12.0, 0.22412194772724559981),
    (3.7, 19.9, 0.085904411584744834147),
    (3.7, 20.1, 0.0529827590770410849),
    (3.7, 30.0, 0.0094778233664410673822),
    (3.7, 49.0, 0.01460817654595259115),
    (3.7, 75.0, 0.074880085522095834949),
    (3.7, 150.0, 0.031522794718746243896),
    (3.7, 1000.0, 0.01983793020706474799),
    (-0.5, 0.1, 2.5105273689585092433),
    (-0.5, 1.0, 0.43109886801837607952),
    (-0.5, 2.5, -0.40427830223905687344),
    (-0.5, 7.9, -0.013058834430652385442),
    (-0.5, 8.1, -0.068277130537628027262),
    (-0.5, 12.0, 0.19436440383353452561),
    (-0.5, 19.9, 0.088926712056866182785),
    (-0.5, 20.1, 0.056042299307892689032),
    (-0.5, 30.0, 0.022470290598831024825),
    (-0.5, 49.0, 0.034262592820786852418),
    (-0.5, 75.0, 0.084922578922046881542),
    (-0.5, 150.0, 0.045554093399396885302),
    (-0.5, 1000.0, 0.014189569370927294323),
    (-2.0, 0.1, 0.001248958658799918984),
    (-2.0, 1.0, 0.11490348493190048047),
    (-2.0, 2.5, 0.44605905843961722674),
    (-2.0, 7.9, -0.1388733891648855325),
    (-2.0, 8.1, -0.086379733802009056103),
    (-2.0, 12.0, -0.084930494878604805352),
    (-2.0, 19.9, -0.16784082927629889004),
    (-2.0, 20.1, -0.15129716189150507505),
    (-2.0, 30.0, 0.078451246073265348901),
    (-2.0, 49.0, 0.048756926055566961741),
    (-2.0, 75.0, -0.036914313672959165576),
    (-2.0, 150.0, -0.000094511806708740223781),
    (-2.0, 1000.0, -0.024777229528605995513),
    (-2.3, 0.5, 7.6720579066430276742),
    (-2.3, 5.0, -0.1718624304852085855),
    (-2.3, 9.0, 0.24218341987307694325),
    (-2.3, 15.0, 0.13607911708145908026),
    (-2.3, 30.0, 0.010973769517088071854),
    (-2.3, 60.0, 0.10296977238221229121),
    (-0.7, 0.5, 0.70274760349337516327),
    (-0.7, 5.0, 0.20935673823865438625),
    (-0.7, 9.0, -0.26489492587242105426),
    (-0.7, 15.0, -0.19091946450145629834),
    (-0.7, 30.0, 0.066370605165213588139),
    (-0.7, 60.0, -0.08348163588499153598),
    (-5.6, 5.0, -0.51320455057161856809),
    (-5.6, 9.0, 0.29793039604562987626),
    (-5.6, 15.0, 0.10169047287592561234),
    (-5.6, 30.0, 0.09899825374540098319),
    (-5.6, 60.0, 0.068549755727108076352),
];

const SPHERICAL_J: &[(u32, f64, f64)] = &[
    (0, 0.1, 0.99833416646828152288),
    (0, 1.0, 0.84147098480789650665),
    (0, 5.0, -0.19178485493262769378),
    (0, 9.9, -0.046215746845992054939),
    (0, 10.1, -0.061888183058701198974),
    (0, 30.0, -0.032934387469762059666),
    (0, 100.0, -0.0050636564110975879366),
    (1, 0.1, 0.033300011902557571571),
    (1, 1.0, 0.30116867893975678925),
    (1, 5.0, -0.095089408079170791649),
    (1, 9.9, 0.085149030886804929989),
    (1, 10.1, 0.071156435357473523757),
    (1, 30.0, -0.0062395279119115370128),
    (1, 100.0, -0.0086738252869878152204),
    (2, 0.1, 0.00066619060844556877977),
    (2, 1.0, 0.062035052011373861102),
    (2, 5.0, 0.13473121008512521879),
    (2, 9.9, 0.072018483478357184313),
    (2, 10.1, 0.083023757917356701824),
    (2, 30.0, 0.032310434678570905965),
    (2, 100.0, 0.00480344165248795348),
    (5, 0.1, 9.6163102329164487127e-10),
    (5, 1.0, 0.000092561158611258163567),
    (5, 5.0, 0.10681116145650454205),
    (5, 9.9, -0.048048128121305707807),
    (5, 10.1, -0.062487912950532434532),
    (5, 30.0, -0.020504008736827491636),
    (5, 100.0, -0.0092901489349075717663),
    (10, 0.1, 7.2715109967136755864e-21),
    (10, 1.0, 7.116552640047313024e-11),
    (10, 5.0, 0.00040734424424946042943),
    (10, 9.9, 0.061707135658247876785),
    (10, 10.1, 0.067509664002087007799),
    (10, 30.0, -0.014529646403897801003),
    (10, 100.0, -0.00019565785971342900596),
    (12, 0.1, 1.2646513378750895288e-25),
    (12, 1.0, 1.2416625969871055286e-13),
    (12, 5.0, 0.00001928786347449460147),
    (12, 9.9, 0.015931491834370373648),
    (12, 10.1, 0.018570507949368460962),
    (12, 30.0, 0.032847427924271470037),
    (12, 100.0, 0.0024839182823940413636),
];

#[test]
fn bessel_j_matches_reference() {
    for &(nu, x, want) in BESSEL_J {
        let got = bessel_j(Order::new(nu).unwrap(), x).unwrap();
        // absolute below 50, relative to the envelope sqrt(2/(pi x)) beyond
        let tol = if x <= 50.0 {
            1e-13
        } else {
            1e-10 * (2.0 / (std::f64::consts::PI * x)).sqrt()
        };
        assert!((got - want).abs() <= tol, "J_{nu}({x}) = {got}, want {want}");
    }
}

#[test]
fn large_negative_order_near_origin() {
    let got = bessel_j(Order::new(-5.6).unwrap(), 0.5).unwrap();
    let want = -44_438.566_294_641_268_867;
    assert!((got - want).abs() <= 1e-12 * want.abs());
}

#[test]
fn spherical_j_matches_reference() {
    for &(n, x, want) in SPHERICAL_J {
        let got = spherical_j(n, x).unwrap();
        assert!(
            (got - want).abs() <= 1e-13 * want.abs().max(1e-3 / x.max(1.0)),
            "j_{n}({x}) = {got}, want {want}"
        );
    }
}

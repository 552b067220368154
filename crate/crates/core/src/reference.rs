//! Published reference values, embedded verbatim. Every value is rounded at
//! its last printed digit.

/// Optimal asymptotic coefficient `q_r` and the scaled parameter limits
/// `a`, `b_1..b_{floor(r/2)}`, `c_1..c_{ceil(r/2)-1}` that attain it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub r: usize,
    pub q: f64,
    /// `NaN` for r = 0, where alpha is fixed rather than optimized.
    pub a: f64,
    pub b: &'static [f64],
    pub c: &'static [f64],
}

pub const TABLE2: &[Table2Row] = &[
    Table2Row {
        r: 0,
        q: 0.1458333333333333,
        a: f64::NAN,
        b: &[],
        c: &[],
    },
    Table2Row {
        r: 1,
        q: 0.1164346275953378,
        a: 0.6524616592755737,
        b: &[],
        c: &[],
    },
    Table2Row {
        r: 2,
        q: 0.1156971503834968,
        a: 0.6554858160170336,
        b: &[1.022718374818576],
        c: &[],
    },
    Table2Row {
        r: 3,
        q: 0.1150899130453658,
        a: 0.6585214692355722,
        b: &[1.027063969740726],
        c: &[0.06794672543480737],
    },
    Table2Row {
        r: 4,
        q: 0.1150687309140004,
        a: 0.658_624_974_317_749,
        b: &[1.027209190884176, 1.003828109549754],
        c: &[0.06761473542307868],
    },
    Table2Row {
        r: 5,
        q: 0.1150557470337394,
        a: 0.6586900229138448,
        b: &[1.027300358228207, 1.004_461_819_824_59],
        c: &[0.06740615925761905, 0.01028318684355288],
    },
    Table2Row {
        r: 6,
        q: 0.1150552764425733,
        a: 0.6586923731079715,
        b: &[1.027303650624826, 1.004484647927062, 1.000570284354183],
        c: &[0.06739862447575472, 0.01023212957791077],
    },
    Table2Row {
        r: 7,
        q: 0.1150549998390641,
        a: 0.6586937593365635,
        b: &[1.027305592742427, 1.004498111789651, 1.000662623065463],
        c: &[
            0.06739417976638237,
            0.01020201310839604,
            0.001509019841357918,
        ],
    },
    Table2Row {
        r: 8,
        q: 0.1150549897593822,
        a: 0.6586938098307351,
        b: &[
            1.027_305_663_478_15,
            1.004498602162219,
            1.000665984979524,
            1.000083456862159,
        ],
        c: &[
            0.06739401787457336,
            0.01020091616496605,
            0.001501502526879076,
        ],
    },
    Table2Row {
        r: 9,
        q: 0.1150549838708233,
        a: 0.6586938392297916,
        b: &[
            1.027305704817829,
            1.004498888799399,
            1.000667949966222,
            1.000096926042045,
        ],
        c: &[
            0.06739392319318871,
            0.01020027499791677,
            0.001_497_108_650_978_32,
            0.0002203516777390261,
        ],
    },
    Table2Row {
        r: 10,
        q: 0.1150549836560699,
        a: 0.6586938403067916,
        b: &[
            1.027305706321311,
            1.004498899243624,
            1.000668021641018,
            1.000097417195005,
            1.000012181578676,
        ],
        c: &[
            0.06739391975105442,
            0.01020025160734295,
            0.001496948418422726,
            0.0002192534425102402,
        ],
    },
    Table2Row {
        r: 11,
        q: 0.1150549835307224,
        a: 0.6586938408223755,
        b: &[
            1.027305707189345,
            1.004498905348772,
            1.000668063456477,
            1.000097703894909,
            1.000014146646888,
        ],
        c: &[
            0.06739391767843365,
            0.01020023796370542,
            0.001496854886068534,
            0.0002186123676843603,
            0.00003215289654154845,
        ],
    },
    Table2Row {
        r: 12,
        q: 0.1150549835261505,
        a: 0.6586938408430183,
        b: &[
            1.027305707214692,
            1.004_498_905_576_07,
            1.000_668_064_981_19,
            1.000097714354882,
            1.000014218316758,
            1.000_001_777_358_19,
        ],
        c: &[
            0.067_393_917_611_028_9,
            0.01020023745865263,
            0.001496851472990505,
            0.0002185889876955666,
            0.00003199263572187769,
        ],
    },
    Table2Row {
        r: 13,
        q: 0.1150549835234823,
        a: 0.6586938407444091,
        b: &[
            1.027_305_707_207_8,
            1.004498905698189,
            1.000668065875004,
            1.000_097_720_453_88,
            1.000014260156537,
            1.000002064060629,
        ],
        c: &[
            0.06739391752000037,
            0.01020023715826531,
            0.001496849480792517,
            0.0002185753423198028,
            0.00003189910564581757,
            4.691124054714891e-6,
        ],
    },
    Table2Row {
        r: 14,
        q: 0.115_054_983_523_385,
        a: 0.6586938407702582,
        b: &[
            1.027305707207799,
            1.004498905739078,
            1.000668065815119,
            1.000097720770217,
            1.000014261621179,
            1.000_002_074_524_45,
            1.000_000_259_301_37,
        ],
        c: &[
            0.06739391752829402,
            0.01020023716420131,
            0.001496849406827393,
            0.000_218_574_836_445_019,
            0.00003189570671658796,
            4.667741696766253e-6,
        ],
    },
    Table2Row {
        r: 15,
        q: 0.1150549835233282,
        a: 0.6586938406842894,
        b: &[
            1.027305707182444,
            1.004498905675305,
            1.000668065987254,
            1.000_097_720_721_77,
            1.000014262600232,
            1.000002080718492,
            1.000000301103361,
        ],
        c: &[
            0.06739391752641309,
            0.01020023709721798,
            0.001496849396193236,
            0.0002185745506217027,
            0.00003189368791732473,
            4.654108249822218e-6,
            6.844384307984062e-7,
        ],
    },
    Table2Row {
        r: 16,
        q: 0.1150549835233261,
        a: 0.6586938406334803,
        b: &[
            1.027305707190814,
            1.004498905736593,
            1.000668065901726,
            1.000097720834017,
            1.000014262573901,
            1.000002080858254,
            1.000000302668948,
            1.000000037787016,
        ],
        c: &[
            0.06739391746458313,
            0.01020023714027207,
            0.001496849368106921,
            0.0002185745455879002,
            0.00003189363350580009,
            4.653599949365328e-6,
            6.810134779486807e-7,
        ],
    },
];

/// `TABLE2` row for `r`, if tabulated (0..=16).
pub fn table2(r: usize) -> Option<&'static Table2Row> {
    TABLE2.get(r)
}

/// Optimal small-n constructions `Q_{n, n/2-2}`: area and free parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table3Row {
    pub n: usize,
    pub area: f64,
    pub alpha: f64,
    pub betas: &'static [f64],
    pub gammas: &'static [f64],
}

pub const TABLE3: &[Table3Row] = &[
    Table3Row {
        n: 6,
        area: 0.6749814429301047,
        alpha: 0.3509301888703616,
        betas: &[],
        gammas: &[],
    },
    Table3Row {
        n: 8,
        area: 0.7268684827516268,
        alpha: 0.2652408674910718,
        betas: &[0.4379295350493946],
        gammas: &[],
    },
    Table3Row {
        n: 10,
        area: 0.7491373458778303,
        alpha: 0.2126101953284637,
        betas: &[0.3433714044229845],
        gammas: &[0.02476000789351616],
    },
    Table3Row {
        n: 12,
        area: 0.7607298734487962,
        alpha: 0.1770854623284314,
        betas: &[0.2827755557037131, 0.2763754214389234],
        gammas: &[0.01982894085863103],
    },
];

/// Areas of the regular polygon, `Q_{n,r}` for r = 0..=4 (where defined),
/// the full-program optimum `P_n*`, and the upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table5Row {
    pub n: usize,
    pub regular: f64,
    pub q: [Option<f64>; 5],
    pub p_star: f64,
    pub upper: f64,
}

/// Tabulated digits, kept verbatim.
#[allow(clippy::approx_constant)]
pub const TABLE5: &[Table5Row] = &[
    Table5Row {
        n: 6,
        regular: 0.6495190528,
        q: [Some(0.6722882584), Some(0.6749814429), None, None, None],
        p_star: 0.6749814429,
        upper: 0.6877007594,
    },
    Table5Row {
        n: 8,
        regular: 0.7071067812,
        q: [
            Some(0.7253199909),
            Some(0.7268542719),
            Some(0.7268684828),
            None,
            None,
        ],
        p_star: 0.7268684828,
        upper: 0.7318815691,
    },
    Table5Row {
        n: 10,
        regular: 0.7347315654,
        q: [
            Some(0.7482573378),
            Some(0.7491189262),
            Some(0.7491297887),
            Some(0.7491373459),
            None,
        ],
        p_star: 0.7491373459,
        upper: 0.7516135587,
    },
    Table5Row {
        n: 12,
        regular: 0.7500000000,
        q: [
            Some(0.7601970055),
            Some(0.7607153082),
            Some(0.7607228359),
            Some(0.7607297471),
            Some(0.7607298734),
        ],
        p_star: 0.7607298734,
        upper: 0.7621336536,
    },
    Table5Row {
        n: 14,
        regular: 0.7592965435,
        q: [
            Some(0.7671877750),
            Some(0.7675203660),
            Some(0.7675256353),
            Some(0.7675308404),
            Some(0.7675309615),
        ],
        p_star: 0.7675310111,
        upper: 0.7684036467,
    },
    Table5Row {
        n: 16,
        regular: 0.7653668647,
        q: [
            Some(0.7716285345),
            Some(0.7718535572),
            Some(0.7718573456),
            Some(0.7718611688),
            Some(0.7718612660),
        ],
        p_star: 0.7718613220,
        upper: 0.7724408116,
    },
    Table5Row {
        n: 18,
        regular: 0.7695453225,
        q: [
            Some(0.7746235089),
            Some(0.7747824059),
            Some(0.7747852057),
            Some(0.7747880405),
            Some(0.7747881160),
        ],
        p_star: 0.7747881651,
        upper: 0.7751926059,
    },
    Table5Row {
        n: 20,
        regular: 0.7725424859,
        q: [
            Some(0.7767382147),
            Some(0.7768543958),
            Some(0.7768565173),
            Some(0.7768586570),
            Some(0.7768587158),
        ],
        p_star: 0.7768587560,
        upper: 0.7771522071,
    },
    Table5Row {
        n: 22,
        regular: 0.7747645313,
        q: [
            Some(0.7782865351),
            Some(0.7783739622),
            Some(0.7783756055),
            Some(0.7783772514),
            Some(0.7783772976),
        ],
        p_star: 0.7783773302,
        upper: 0.7785970008,
    },
    Table5Row {
        n: 24,
        regular: 0.7764571353,
        q: [
            Some(0.7794540033),
            Some(0.7795213955),
            Some(0.7795226929),
            Some(0.7795239821),
            Some(0.7795240189),
        ],
        p_star: 0.7795240452,
        upper: 0.7796927566,
    },
    Table5Row {
        n: 30,
        regular: 0.7796688406,
        q: [
            Some(0.7816380102),
            Some(0.7816725130),
            Some(0.7816732130),
            Some(0.7816738921),
            Some(0.7816739122),
        ],
        p_star: 0.7816739269,
        upper: 0.7817597927,
    },
    Table5Row {
        n: 40,
        regular: 0.7821723252,
        q: [
            Some(0.7833076096),
            Some(0.7833221318),
            Some(0.7833224422),
            Some(0.7833227341),
            Some(0.7833227431),
        ],
        p_star: 0.7833227495,
        upper: 0.7833587784,
    },
    Table5Row {
        n: 50,
        regular: 0.7833327098,
        q: [
            Some(0.7840695435),
            Some(0.7840769608),
            Some(0.7840771244),
            Some(0.7840772750),
            Some(0.7840772797),
        ],
        p_star: 0.7840772830,
        upper: 0.7840956746,
    },
    Table5Row {
        n: 60,
        regular: 0.7839634745,
        q: [
            Some(0.7844798073),
            Some(0.7844840910),
            Some(0.7844841875),
            Some(0.7844842749),
            Some(0.7844842777),
        ],
        p_star: 0.7844842796,
        upper: 0.7844949027,
    },
    Table5Row {
        n: 70,
        regular: 0.7843439529,
        q: [
            Some(0.7847256986),
            Some(0.7847283918),
            Some(0.7847284534),
            Some(0.7847285085),
            Some(0.7847285103),
        ],
        p_star: 0.7847285115,
        upper: 0.7847351925,
    },
    Table5Row {
        n: 80,
        regular: 0.7845909573,
        q: [
            Some(0.7848845934),
            Some(0.7848863952),
            Some(0.7848864368),
            Some(0.7848864738),
            Some(0.7848864750),
        ],
        p_star: 0.7848864758,
        upper: 0.7848909473,
    },
    Table5Row {
        n: 90,
        regular: 0.7847603296,
        q: [
            Some(0.7849931681),
            Some(0.7849944322),
            Some(0.7849944617),
            Some(0.7849944876),
            Some(0.7849944885),
        ],
        p_star: 0.7849944890,
        upper: 0.7849976272,
    },
    Table5Row {
        n: 100,
        regular: 0.7848814941,
        q: [
            Some(0.7850706272),
            Some(0.7850715479),
            Some(0.7850715695),
            Some(0.7850715884),
            Some(0.7850715890),
        ],
        p_star: 0.7850715895,
        upper: 0.7850738759,
    },
    Table5Row {
        n: 110,
        regular: 0.7849711494,
        q: [
            Some(0.7851278167),
            Some(0.7851285079),
            Some(0.7851285242),
            Some(0.7851285384),
            Some(0.7851285389),
        ],
        p_star: 0.7851285392,
        upper: 0.7851302562,
    },
    Table5Row {
        n: 120,
        regular: 0.7850393436,
        q: [
            Some(0.7851712379),
            Some(0.7851717699),
            Some(0.7851717826),
            Some(0.7851717935),
            Some(0.7851717939),
        ],
        p_star: 0.7851717941,
        upper: 0.7851731162,
    },
];

pub fn table5(n: usize) -> Option<&'static Table5Row> {
    TABLE5.iter().find(|row| row.n == n)
}

/// Optimal angles of `P_n*`, as printed (strings keep the printed precision).
pub const TABLE4: &[(usize, &[&str])] = &[
    (6, &["0.350930", "0.653342", "0.566524"]),
    (8, &["0.265241", "0.470631", "0.405228", "0.429696"]),
    (
        10,
        &["0.212610", "0.368131", "0.318611", "0.339137", "0.332306"],
    ),
    (
        12,
        &[
            "0.177085", "0.302604", "0.262947", "0.279461", "0.273290", "0.275409",
        ],
    ),
    (
        14,
        &[
            "0.151583", "0.257026", "0.233904", "0.237628", "0.232444", "0.234442", "0.233769",
        ],
    ),
    (
        16,
        &[
            "0.132428", "0.223448", "0.194967", "0.206716", "0.202285", "0.204013", "0.203359",
            "0.203580",
        ],
    ),
    (
        18,
        &[
            "0.117533", "0.197661", "0.172654", "0.182938", "0.179070", "0.180577", "0.179999",
            "0.180218", "0.180145",
        ],
    ),
    (
        20,
        &[
            "0.105629", "0.177228", "0.154925", "0.164076", "0.160640", "0.161977", "0.161464",
            "0.161661", "0.161586", "0.161611",
        ],
    ),
    (
        22,
        &[
            "0.0959016",
            "0.160633",
            "0.140496",
            "0.148745",
            "0.145652",
            "0.146854",
            "0.146393",
            "0.146571",
            "0.146503",
            "0.146528",
            "0.146520",
        ],
    ),
    (
        24,
        &[
            "0.0878067",
            "0.146886",
            "0.128526",
            "0.136037",
            "0.133224",
            "0.134316",
            "0.133898",
            "0.134059",
            "0.133997",
            "0.134021",
            "0.134012",
            "0.134015",
        ],
    ),
    (
        30,
        &[
            "0.0700443",
            "0.116891",
            "0.102361",
            "0.108291",
            "0.106075",
            "0.106933",
            "0.106605",
            "0.106731",
            "0.106683",
            "0.106701",
            "0.106694",
            "0.106697",
            "0.106696",
            "0.106696",
            "0.106696",
        ],
    ),
    (
        40,
        &[
            "0.0523626",
            "0.0872236",
            "0.0764267",
            "0.0808253",
            "0.0791841",
            "0.0798182",
            "0.0795763",
            "0.0796689",
            "0.0796334",
            "0.0796470",
            "0.0796418",
            "0.0796437",
            "0.0796429",
            "0.0796432",
            "0.0796431",
            "0.0796431",
            "0.0796431",
            "0.0796431",
            "0.0796431",
            "0.0796431",
        ],
    ),
    (
        50,
        &[
            "0.0418008",
            "0.0695718",
            "0.0609765",
            "0.0644752",
            "0.0631706",
            "0.0636742",
            "0.0634822",
            "0.0635556",
            "0.0635275",
            "0.0635382",
            "0.0635340",
            "0.0635355",
            "0.0635349",
            "0.0635351",
            "0.0635350",
            "0.0635350",
            "0.0635350",
            "0.0635350",
            "0.0635349",
            "0.0635349",
            "0.0635349",
            "0.0635349",
            "0.0635349",
            "0.0635349",
            "0.0635349",
        ],
    ),
    (
        60,
        &[
            "0.0347820",
            "0.0578637",
            "0.0507223",
            "0.0536280",
            "0.0525448",
            "0.0529626",
            "0.0528033",
            "0.0528642",
            "0.0528408",
            "0.0528496",
            "0.0528462",
            "0.0528474",
            "0.0528469",
            "0.0528470",
            "0.0528469",
            "0.0528469",
            "0.0528468",
            "0.0528468",
            "0.0528468",
            "0.0528467",
            "0.0528467",
            "0.0528467",
            "0.0528467",
            "0.0528467",
            "0.0528467",
            "0.0528466",
            "0.0528466",
            "0.0528466",
            "0.0528466",
            "0.0528466",
        ],
    ),
    (
        70,
        &[
            "0.0297804",
            "0.0495296",
            "0.0434206",
            "0.0459055",
            "0.0449793",
            "0.0453364",
            "0.0452002",
            "0.0452521",
            "0.0452321",
            "0.0452396",
            "0.0452366",
            "0.0452376",
            "0.0452371",
            "0.0452372",
            "0.0452371",
            "0.0452370",
            "0.0452370",
            "0.0452369",
            "0.0452369",
            "0.0452369",
            "0.0452368",
            "0.0452368",
            "0.0452368",
            "0.0452367",
            "0.0452367",
            "0.0452367",
            "0.0452367",
            "0.0452367",
            "0.0452366",
            "0.0452366",
            "0.0452366",
            "0.0452366",
            "0.0452366",
            "0.0452366",
            "0.0452366",
        ],
    ),
    (
        80,
        &[
            "0.0260361",
            "0.0432947",
            "0.0379568",
            "0.0401276",
            "0.0393185",
            "0.0396302",
            "0.0395112",
            "0.0395565",
            "0.0395390",
            "0.0395454",
            "0.0395428",
            "0.0395437",
            "0.0395432",
            "0.0395432",
            "0.0395431",
            "0.0395430",
            "0.0395430",
            "0.0395429",
            "0.0395429",
            "0.0395428",
            "0.0395428",
            "0.0395427",
            "0.0395427",
            "0.0395426",
            "0.0395426",
            "0.0395426",
            "0.0395425",
            "0.0395425",
            "0.0395425",
            "0.0395424",
            "0.0395424",
            "0.0395424",
            "0.0395424",
            "0.0395424",
            "0.0395424",
            "0.0395424",
            "0.0395424",
            "0.0395423",
            "0.0395423",
            "0.0395423",
        ],
    ),
    (
        90,
        &[
            "0.0231282",
            "0.0384545",
            "0.0337147",
            "0.0356421",
            "0.0349236",
            "0.0352001",
            "0.0350945",
            "0.0351345",
            "0.0351190",
            "0.0351247",
            "0.0351223",
            "0.0351230",
            "0.0351226",
            "0.0351225",
            "0.0351224",
            "0.0351223",
            "0.0351222",
            "0.0351221",
            "0.0351221",
            "0.0351220",
            "0.0351219",
            "0.0351219",
            "0.0351218",
            "0.0351218",
            "0.0351217",
            "0.0351217",
            "0.0351216",
            "0.0351216",
            "0.0351215",
            "0.0351215",
            "0.0351215",
            "0.0351214",
            "0.0351214",
            "0.0351214",
            "0.0351214",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
            "0.0351213",
        ],
    ),
    (
        100,
        &[
            "0.0208046",
            "0.0345883",
            "0.0303258",
            "0.0320589",
            "0.0314127",
            "0.0316612",
            "0.0315662",
            "0.0316021",
            "0.0315881",
            "0.0315931",
            "0.0315909",
            "0.0315915",
            "0.0315911",
            "0.0315910",
            "0.0315909",
            "0.0315907",
            "0.0315906",
            "0.0315905",
            "0.0315904",
            "0.0315903",
            "0.0315903",
            "0.0315902",
            "0.0315901",
            "0.0315900",
            "0.0315900",
            "0.0315899",
            "0.0315898",
            "0.0315898",
            "0.0315897",
            "0.0315897",
            "0.0315897",
            "0.0315896",
            "0.0315896",
            "0.0315895",
            "0.0315895",
            "0.0315895",
            "0.0315894",
            "0.0315894",
            "0.0315894",
            "0.0315894",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
            "0.0315893",
        ],
    ),
    (
        110,
        &[
            "0.0189055",
            "0.0314290",
            "0.0275563",
            "0.0291308",
            "0.0285436",
            "0.0287692",
            "0.0286828",
            "0.0287153",
            "0.0287025",
            "0.0287070",
            "0.0287050",
            "0.0287054",
            "0.0287050",
            "0.0287049",
            "0.0287048",
            "0.0287046",
            "0.0287045",
            "0.0287043",
            "0.0287042",
            "0.0287041",
            "0.0287040",
            "0.0287039",
            "0.0287038",
            "0.0287037",
            "0.0287037",
            "0.0287036",
            "0.0287035",
            "0.0287034",
            "0.0287034",
            "0.0287033",
            "0.0287033",
            "0.0287032",
            "0.0287031",
            "0.0287031",
            "0.0287031",
            "0.0287030",
            "0.0287030",
            "0.0287029",
            "0.0287029",
            "0.0287029",
            "0.0287028",
            "0.0287028",
            "0.0287028",
            "0.0287028",
            "0.0287027",
            "0.0287027",
            "0.0287027",
            "0.0287027",
            "0.0287027",
            "0.0287027",
            "0.0287026",
            "0.0287026",
            "0.0287026",
            "0.0287026",
            "0.0287026",
        ],
    ),
    (
        120,
        &[
            "0.0173243",
            "0.0287991",
            "0.0252508",
            "0.0266933",
            "0.0261551",
            "0.0263616",
            "0.0262824",
            "0.0263121",
            "0.0263003",
            "0.0263043",
            "0.0263024",
            "0.0263028",
            "0.0263023",
            "0.0263022",
            "0.0263020",
            "0.0263018",
            "0.0263017",
            "0.0263015",
            "0.0263014",
            "0.0263012",
            "0.0263011",
            "0.0263010",
            "0.0263009",
            "0.0263008",
            "0.0263007",
            "0.0263006",
            "0.0263005",
            "0.0263004",
            "0.0263003",
            "0.0263003",
            "0.0263002",
            "0.0263001",
            "0.0263001",
            "0.0263000",
            "0.0262999",
            "0.0262999",
            "0.0262998",
            "0.0262998",
            "0.0262997",
            "0.0262997",
            "0.0262996",
            "0.0262996",
            "0.0262996",
            "0.0262995",
            "0.0262995",
            "0.0262995",
            "0.0262994",
            "0.0262994",
            "0.0262994",
            "0.0262994",
            "0.0262994",
            "0.0262993",
            "0.0262993",
            "0.0262993",
            "0.0262993",
            "0.0262993",
            "0.0262993",
            "0.0262993",
            "0.0262993",
            "0.0262993",
        ],
    ),
];

pub fn table4(n: usize) -> Option<&'static [&'static str]> {
    TABLE4.iter().find(|(m, _)| *m == n).map(|(_, v)| *v)
}

/// Number of digits after the decimal point in a printed value.
pub fn printed_decimals(s: &str) -> usize {
    s.split_once('.').map_or(0, |(_, frac)| frac.len())
}

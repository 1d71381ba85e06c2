// (x, psi(x), ln Gamma(x)) computed with 40-digit arithmetic (mpmath) on 50
// log-spaced points in [1e-2, 1e3].
#[allow(clippy::excessive_precision)]
pub const REFERENCE: [(f64, f64, f64); 50] = [
    (0.01, -100.5608854578686724155, 4.599479878042021701581),
    (0.012648552168552962, -79.61703188777925151374, 4.36304236012905713939),
    (0.015998587196060583, -63.05672160362669985027, 4.126229116858418826767),
    (0.02023589647725157, -49.96154599664109561443, 3.888950239588276195685),
    (0.025595479226995357, -39.60528194690479896831, 3.651097640937887859574),
    (0.03237457542817644, -31.41362185770632788613, 3.412543493560834713011),
    (0.040949150623804255, -24.9323320915583288614, 3.173140083964378566162),
    (0.051794746792312114, -19.80207547683548185608, 2.932722435853236001335),
    (0.0655128556859551, -15.73850378151757454646, 2.691115896652421581399),
    (0.08286427728546844, -12.51651909771437619197, 2.448152138321612452486),
    (0.10481131341546858, -9.957835114247959520503, 2.203698856473706591294),
    (0.1325711365590109, -7.921152933494930252895, 1.9577110419111961006),
    (0.16768329368110083, -6.294411208073351474464, 1.710315232522206857711),
    (0.21209508879201908, -4.988684384102047379816, 1.461942789662364630525),
    (0.2682695795279726, -3.933391349124753977861, 1.213534077584496807031),
    (0.33932217718953284, -3.072544167768103898964, 0.9668424837250385070209),
    (0.4291934260128778, -2.36181677434048097544, 0.7248755316794554528873),
    (0.542867543932386, -1.766250805928021103091, 0.4925201419453984501105),
    (0.6866488450043001, -1.258445372930847517115, 0.2774111466679463889299),
    (0.8685113737513527, -0.8171048877289080465717, 0.09111805492033308389802),
    (1.0985411419875584, -0.4258479035385548899545, -0.04925271678417528203382),
    (1.3894954943731377, -0.07221033530260451488664, -0.1189113365627882012781),
    (1.7575106248547918, 0.2531955443039425279384, -0.0825209365336710998415),
    (2.2229964825261948, 0.5573848004721615213233, 0.1096151498474887560665),
    (2.8117686979742307, 0.8455754119246844207203, 0.5266245490850263934807),
    (3.556480306223129, 1.121644843847797689745, 1.263803932208365592287),
    (4.498432668969445, 1.38848101616001120993, 2.451560055881543124625),
    (5.6898660290182965, 1.648244972745342604791, 4.267254530877875423949),
    (7.19685673001152, 1.902563754259536177562, 6.950867072142912803702),
    (9.102981779915218, 2.152670517076615379364, 10.8256705986018202567),
    (11.513953993264474, 2.399506000963775021782, 16.32547433005009689944),
    (14.563484775012437, 2.643792190130033624823, 24.03046294838677282912),
    (18.42069969326716, 2.886086123061311468235, 34.71427311095972604296),
    (23.29951810515372, 3.126819529296202820608, 49.40574466935815749864),
    (29.470517025518106, 3.366328293291402258341, 69.46981655398052571019),
    (37.275937203149404, 3.604874554808626316509, 96.71337580389755704544),
    (47.148663634573936, 3.842663426134224926401, 133.5236022175557231079),
    (59.63623316594643, 4.079855732946060387972, 183.048596145644433997),
    (75.43120063354617, 4.31657778843515367256, 249.4329821070120365205),
    (95.4095476349994, 4.552928933398279644982, 338.1249383637273474188),
    (120.67926406393286, 4.788987380129729094455, 456.2759600217414062917),
    (152.64179671752333, 5.02481475919800345569, 613.2609397209084980229),
    (193.06977288832502, 5.260459668215799589737, 821.3542564991690452728),
    (244.2053094548651, 5.495960448790032308347, 1096.608029060049658171),
    (308.8843596477481, 5.731347364031967797141, 1459.992195436045104262),
    (390.6939937054617, 5.96664430887902961853, 1938.873503160399376229),
    (494.17133613238343, 6.201870155264253830681, 2568.932959666493604955),
    (625.0551925273973, 6.437039811225902675863, 3396.650251184268665131),
    (790.60432109077, 6.672165055501757967702, 4482.520953353926149751),
    (1000.0, 6.90725519564881205205, 5905.220423209181211826),
];

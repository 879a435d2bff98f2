#include "t_table.hpp"

namespace dta::metrics::detail {

// Two-sided critical values of Student's t, alpha = 0.05, df = 1..100.
const double kCrit05[100] = {
    12.7062047364, 4.3026527297, 3.18244630528, 2.7764451052, 2.57058183564,
    2.44691185114, 2.36462425159, 2.3060041352, 2.26215716285, 2.22813885196,
    2.20098516008, 2.17881282966, 2.16036865646, 2.14478668792, 2.13144954556,
    2.11990529922, 2.10981557783, 2.10092204024, 2.09302405441, 2.08596344727,
    2.07961384473, 2.0738730679, 2.06865761042, 2.06389856163, 2.05953855275,
    2.05552943864, 2.05183051648, 2.0484071418, 2.04522964213, 2.0422724563,
    2.0395134464, 2.03693334346, 2.03451529745, 2.03224450932, 2.03010792825,
    2.02809400098, 2.02619246303, 2.02439416391, 2.02269092004, 2.02107539031,
    2.01954097044, 2.01808170282, 2.01669219923, 2.01536757444, 2.01410338888,
    2.01289559892, 2.01174051373, 2.01063475762, 2.00957523713, 2.0085591121,
    2.00758377032, 2.00664680506, 2.00574599532, 2.00487928819, 2.00404478329,
    2.00324071885, 2.00246545929, 2.00171748415, 2.00099537809, 2.00029782201,
    1.99962358499, 1.99897151703, 1.99834054252, 1.99772965432, 1.99713790839,
    1.99656441895, 1.99600835403, 1.99546893143, 1.99494541511, 1.99443711177,
    1.99394336785, 1.99346356666, 1.99299712589, 1.99254349518, 1.992102154,
    1.99167260964, 1.99125439539, 1.99084706881, 1.99045021023, 1.99006342125,
    1.98968632346, 1.98931855714, 1.98895978018, 1.98860966698, 1.98826790748,
    1.98793420624, 1.98760828159, 1.98728986483, 1.98697869951, 1.9866745407,
    1.98637715442, 1.98608631695, 1.98580181435, 1.98552344187, 1.98525100351,
    1.98498431153, 1.98472318603, 1.98446745443, 1.98421695151, 1.98397151845,
};

// Two-sided critical values of Student's t, alpha = 0.01, df = 1..100.
const double kCrit01[100] = {
    63.6567411629, 9.92484320092, 5.84090930973, 4.60409487142, 4.03214298356,
    3.70742802132, 3.49948329735, 3.35538733133, 3.24983554159, 3.16927267262,
    3.10580651554, 3.05453958939, 3.01227583872, 2.97684273437, 2.94671288349,
    2.9207816225, 2.89823051963, 2.87844047271, 2.86093460645, 2.84533970978,
    2.83135955802, 2.8187560606, 2.80733568377, 2.79693950477, 2.78743581368,
    2.77871453333, 2.77068295712, 2.76326245546, 2.75638590367, 2.74999565357,
    2.74404191929, 2.73848148201, 2.73327664235, 2.72839436707, 2.72380558921,
    2.71948463045, 2.71540872155, 2.71155760191, 2.70791318352, 2.70445926743,
    2.70118130358, 2.69806618622, 2.69510207916, 2.69227826569, 2.68958501937,
    2.68701349224, 2.68455561787, 2.68220402695, 2.67995197363, 2.67779327094,
    2.67572223411, 2.67373363065, 2.67182263624, 2.66998479573, 2.66821598849,
    2.66651239756, 2.66487048224, 2.66328695354, 2.66175875216, 2.66028302886,
    2.65885712665, 2.65747856495, 2.6561450251, 2.65485433741, 2.65360446938,
    2.65239351503, 2.65121968518, 2.65008129869, 2.64897677439, 2.64790462375,
    2.64686344424, 2.64585191316, 2.64486878207, 2.64391287165, 2.64298306697,
    2.64207831315, 2.64119761139, 2.64034001529, 2.63950462745, 2.63869059634,
    2.63789711342, 2.63712341042, 2.63636875693, 2.63563245805, 2.63491385225,
    2.63421230945, 2.63352722908, 2.63285803848, 2.6322041912, 2.63156516559,
    2.63094046336, 2.63032960832, 2.62973214514, 2.62914763826, 2.62857567078,
    2.62801584351, 2.62746777401, 2.62693109576, 2.62640545728, 2.62589052144,
};

// Two-sided critical values of Student's t, alpha = 0.001, df = 1..100.
const double kCrit001[100] = {
    636.619248769, 31.599054577, 12.9239786366, 8.61030158138, 6.86882662588,
    5.95881617882, 5.40788252098, 5.04130543339, 4.78091258593, 4.5868938587,
    4.43697933823, 4.31779128361, 4.22083172771, 4.14045411274, 4.0727651959,
    4.01499632718, 3.96512627212, 3.92164582509, 3.88340585259, 3.84951627493,
    3.81927716427, 3.7921306717, 3.76762680431, 3.74539861929, 3.72514394973,
    3.70661174349, 3.68959171352, 3.67390640062, 3.6594050194, 3.645958635,
    3.63345634973, 3.62180225984, 3.61091300764, 3.60071579737, 3.5911467758,
    3.58214970145, 3.57367484444, 3.56567807158, 3.55812008133, 3.55096576086,
    3.54418364297, 3.53774544533, 3.53162567781, 3.52580130649, 3.52025146497,
    3.51495720548, 3.50990128345, 3.50506797047, 3.50044289137, 3.49601288181,
    3.49176586353, 3.48769073466, 3.48377727304, 3.48001605087, 3.47639835903,
    3.47291613993, 3.4695619277, 3.46632879493, 3.46321030495, 3.4602004692,
    3.45729370887, 3.45448482051, 3.45176894496, 3.44914153936, 3.44659835182,
    3.44413539854, 3.44174894298, 3.43943547698, 3.43719170359, 3.43501452142,
    3.43290101034, 3.43084841846, 3.42885415014, 3.42691575513, 3.42503091846,
    3.4231974513, 3.42141328242, 3.41967645046, 3.41798509671, 3.41633745848,
    3.41473186299, 3.41316672172, 3.41164052516, 3.41015183795, 3.4086992944,
    3.4072815943, 3.40589749908, 3.40454582813, 3.40322545553, 3.40193530686,
    3.40067435632, 3.39944162399, 3.39823617333, 3.39705710875, 3.39590357347,
    3.39477474736, 3.39366984505, 3.39258811413, 3.39152883336, 3.39049131116,
};

// Two-sided critical values of Student's t, alpha = 0.0001, df = 1..100.
const double kCrit0001[100] = {
    6366.19767132, 99.9924998455, 28.000130011, 15.5441005815, 11.1777100703,
    9.0823463273, 7.88458426242, 7.12000388273, 6.59368258394, 6.21105089129,
    5.92119416255, 5.69446579329, 5.5125150496, 5.36341304116, 5.23908821175,
    5.13389351755, 5.04376497664, 4.96570628529, 4.89746158886, 4.83730115291,
    4.78387711644, 4.73612406097, 4.69318900107, 4.65438114688, 4.61913523493,
    4.58698434763, 4.55753948237, 4.53047399739, 4.50551163121, 4.48241717541,
    4.46098914078, 4.44105393812, 4.42246122137, 4.40508013164, 4.38879624535,
    4.37350907745, 4.35913002563, 4.34558066739, 4.33279134127, 4.32069995859,
    4.30925100306, 4.29839468563, 4.28808622439, 4.27828523216, 4.26895519077,
    4.26006299925, 4.25157858368, 4.24347455933, 4.23572593697, 4.22830986683,
    4.22120541468, 4.2143933654, 4.20785605026, 4.20157719457, 4.19554178295,
    4.18973593998, 4.1841468241, 4.17876253317, 4.17357202018, 4.16856501786,
    4.16373197113, 4.15906397645, 4.15455272725, 4.15019046475, 4.14596993359,
    4.14188434166, 4.13792732374, 4.13409290847, 4.13037548844, 4.12676979281,
    4.12327086251, 4.1198740275, 4.11657488604, 4.1133692857, 4.11025330599,
    4.10722324235, 4.10427559153, 4.10140703809, 4.098614442, 4.09589482718,
    4.09324537095, 4.09066339427, 4.08814635273, 4.08569182822, 4.08329752113,
    4.08096124326, 4.07868091109, 4.07645453966, 4.07428023674, 4.07215619756,
    4.07008069973, 4.06805209868, 4.06606882324, 4.06412937164, 4.06223230772,
    4.06037625736, 4.05855990518, 4.05678199143, 4.05504130911, 4.0533367012,
};

}  // namespace dta::metrics::detail

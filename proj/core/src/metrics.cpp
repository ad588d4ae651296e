#include "rdep/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdep {

double balanced_accuracy(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("balanced_accuracy: length mismatch");
    if (y_true.empty())
        throw std::invalid_argument("balanced_accuracy: empty input");
    std::size_t pos = 0, neg = 0, tp = 0, tn = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if ((y_true[i] != -1 && y_true[i] != 1) || (y_pred[i] != -1 && y_pred[i] != 1))
            throw std::invalid_argument("balanced_accuracy: labels must be -1 or +1");
        if (y_true[i] > 0) {
            ++pos;
            if (y_pred[i] > 0) ++tp;
        } else {
            ++neg;
            if (y_pred[i] < 0) ++tn;
        }
    }
    if (pos == 0 || neg == 0)
        throw std::invalid_argument("balanced_accuracy: y_true needs both classes");
    double tpr = static_cast<double>(tp) / static_cast<double>(pos);
    double tnr = static_cast<double>(tn) / static_cast<double>(neg);
    return (tpr + tnr) / 2.0;
}

namespace {

// One-sided critical values {95%, 99%} for df = 1..200.
constexpr double kTCritical[200][2] = {
    {6.313752, 31.820516},  // df=1
    {2.919986, 6.964557},  // df=2
    {2.353363, 4.540703},  // df=3
    {2.131847, 3.746947},  // df=4
    {2.015048, 3.364930},  // df=5
    {1.943180, 3.142668},  // df=6
    {1.894579, 2.997952},  // df=7
    {1.859548, 2.896459},  // df=8
    {1.833113, 2.821438},  // df=9
    {1.812461, 2.763769},  // df=10
    {1.795885, 2.718079},  // df=11
    {1.782288, 2.680998},  // df=12
    {1.770933, 2.650309},  // df=13
    {1.761310, 2.624494},  // df=14
    {1.753050, 2.602480},  // df=15
    {1.745884, 2.583487},  // df=16
    {1.739607, 2.566934},  // df=17
    {1.734064, 2.552380},  // df=18
    {1.729133, 2.539483},  // df=19
    {1.724718, 2.527977},  // df=20
    {1.720743, 2.517648},  // df=21
    {1.717144, 2.508325},  // df=22
    {1.713872, 2.499867},  // df=23
    {1.710882, 2.492159},  // df=24
    {1.708141, 2.485107},  // df=25
    {1.705618, 2.478630},  // df=26
    {1.703288, 2.472660},  // df=27
    {1.701131, 2.467140},  // df=28
    {1.699127, 2.462021},  // df=29
    {1.697261, 2.457262},  // df=30
    {1.695519, 2.452824},  // df=31
    {1.693889, 2.448678},  // df=32
    {1.692360, 2.444794},  // df=33
    {1.690924, 2.441150},  // df=34
    {1.689572, 2.437723},  // df=35
    {1.688298, 2.434494},  // df=36
    {1.687094, 2.431447},  // df=37
    {1.685954, 2.428568},  // df=38
    {1.684875, 2.425841},  // df=39
    {1.683851, 2.423257},  // df=40
    {1.682878, 2.420803},  // df=41
    {1.681952, 2.418470},  // df=42
    {1.681071, 2.416250},  // df=43
    {1.680230, 2.414134},  // df=44
    {1.679427, 2.412116},  // df=45
    {1.678660, 2.410188},  // df=46
    {1.677927, 2.408345},  // df=47
    {1.677224, 2.406581},  // df=48
    {1.676551, 2.404892},  // df=49
    {1.675905, 2.403272},  // df=50
    {1.675285, 2.401718},  // df=51
    {1.674689, 2.400225},  // df=52
    {1.674116, 2.398790},  // df=53
    {1.673565, 2.397410},  // df=54
    {1.673034, 2.396081},  // df=55
    {1.672522, 2.394801},  // df=56
    {1.672029, 2.393568},  // df=57
    {1.671553, 2.392377},  // df=58
    {1.671093, 2.391229},  // df=59
    {1.670649, 2.390119},  // df=60
    {1.670219, 2.389047},  // df=61
    {1.669804, 2.388011},  // df=62
    {1.669402, 2.387008},  // df=63
    {1.669013, 2.386037},  // df=64
    {1.668636, 2.385097},  // df=65
    {1.668271, 2.384186},  // df=66
    {1.667916, 2.383302},  // df=67
    {1.667572, 2.382446},  // df=68
    {1.667239, 2.381615},  // df=69
    {1.666914, 2.380807},  // df=70
    {1.666600, 2.380024},  // df=71
    {1.666294, 2.379262},  // df=72
    {1.665996, 2.378522},  // df=73
    {1.665707, 2.377802},  // df=74
    {1.665425, 2.377102},  // df=75
    {1.665151, 2.376420},  // df=76
    {1.664885, 2.375757},  // df=77
    {1.664625, 2.375111},  // df=78
    {1.664371, 2.374482},  // df=79
    {1.664125, 2.373868},  // df=80
    {1.663884, 2.373270},  // df=81
    {1.663649, 2.372687},  // df=82
    {1.663420, 2.372119},  // df=83
    {1.663197, 2.371564},  // df=84
    {1.662978, 2.371022},  // df=85
    {1.662765, 2.370493},  // df=86
    {1.662557, 2.369977},  // df=87
    {1.662354, 2.369472},  // df=88
    {1.662155, 2.368979},  // df=89
    {1.661961, 2.368497},  // df=90
    {1.661771, 2.368026},  // df=91
    {1.661585, 2.367566},  // df=92
    {1.661404, 2.367115},  // df=93
    {1.661226, 2.366674},  // df=94
    {1.661052, 2.366243},  // df=95
    {1.660881, 2.365821},  // df=96
    {1.660715, 2.365407},  // df=97
    {1.660551, 2.365002},  // df=98
    {1.660391, 2.364606},  // df=99
    {1.660234, 2.364217},  // df=100
    {1.660081, 2.363837},  // df=101
    {1.659930, 2.363464},  // df=102
    {1.659782, 2.363098},  // df=103
    {1.659637, 2.362739},  // df=104
    {1.659495, 2.362388},  // df=105
    {1.659356, 2.362043},  // df=106
    {1.659219, 2.361704},  // df=107
    {1.659085, 2.361372},  // df=108
    {1.658953, 2.361046},  // df=109
    {1.658824, 2.360726},  // df=110
    {1.658697, 2.360412},  // df=111
    {1.658573, 2.360104},  // df=112
    {1.658450, 2.359801},  // df=113
    {1.658330, 2.359504},  // df=114
    {1.658212, 2.359212},  // df=115
    {1.658096, 2.358924},  // df=116
    {1.657982, 2.358642},  // df=117
    {1.657870, 2.358365},  // df=118
    {1.657759, 2.358093},  // df=119
    {1.657651, 2.357825},  // df=120
    {1.657544, 2.357561},  // df=121
    {1.657439, 2.357302},  // df=122
    {1.657336, 2.357047},  // df=123
    {1.657235, 2.356797},  // df=124
    {1.657135, 2.356550},  // df=125
    {1.657037, 2.356307},  // df=126
    {1.656940, 2.356069},  // df=127
    {1.656845, 2.355834},  // df=128
    {1.656752, 2.355602},  // df=129
    {1.656659, 2.355375},  // df=130
    {1.656569, 2.355150},  // df=131
    {1.656479, 2.354930},  // df=132
    {1.656391, 2.354712},  // df=133
    {1.656305, 2.354498},  // df=134
    {1.656219, 2.354287},  // df=135
    {1.656135, 2.354079},  // df=136
    {1.656052, 2.353875},  // df=137
    {1.655970, 2.353673},  // df=138
    {1.655890, 2.353474},  // df=139
    {1.655811, 2.353278},  // df=140
    {1.655732, 2.353085},  // df=141
    {1.655655, 2.352895},  // df=142
    {1.655579, 2.352707},  // df=143
    {1.655504, 2.352522},  // df=144
    {1.655430, 2.352340},  // df=145
    {1.655357, 2.352160},  // df=146
    {1.655285, 2.351983},  // df=147
    {1.655215, 2.351808},  // df=148
    {1.655145, 2.351635},  // df=149
    {1.655076, 2.351465},  // df=150
    {1.655007, 2.351297},  // df=151
    {1.654940, 2.351131},  // df=152
    {1.654874, 2.350967},  // df=153
    {1.654808, 2.350806},  // df=154
    {1.654744, 2.350646},  // df=155
    {1.654680, 2.350489},  // df=156
    {1.654617, 2.350334},  // df=157
    {1.654555, 2.350180},  // df=158
    {1.654494, 2.350029},  // df=159
    {1.654433, 2.349880},  // df=160
    {1.654373, 2.349732},  // df=161
    {1.654314, 2.349586},  // df=162
    {1.654256, 2.349442},  // df=163
    {1.654198, 2.349300},  // df=164
    {1.654141, 2.349160},  // df=165
    {1.654085, 2.349021},  // df=166
    {1.654029, 2.348884},  // df=167
    {1.653974, 2.348749},  // df=168
    {1.653920, 2.348615},  // df=169
    {1.653866, 2.348483},  // df=170
    {1.653813, 2.348352},  // df=171
    {1.653761, 2.348223},  // df=172
    {1.653709, 2.348096},  // df=173
    {1.653658, 2.347970},  // df=174
    {1.653607, 2.347845},  // df=175
    {1.653557, 2.347722},  // df=176
    {1.653508, 2.347600},  // df=177
    {1.653459, 2.347479},  // df=178
    {1.653411, 2.347360},  // df=179
    {1.653363, 2.347243},  // df=180
    {1.653316, 2.347126},  // df=181
    {1.653269, 2.347011},  // df=182
    {1.653223, 2.346897},  // df=183
    {1.653177, 2.346785},  // df=184
    {1.653132, 2.346673},  // df=185
    {1.653087, 2.346563},  // df=186
    {1.653043, 2.346454},  // df=187
    {1.652999, 2.346346},  // df=188
    {1.652956, 2.346240},  // df=189
    {1.652913, 2.346134},  // df=190
    {1.652871, 2.346030},  // df=191
    {1.652829, 2.345926},  // df=192
    {1.652787, 2.345824},  // df=193
    {1.652746, 2.345723},  // df=194
    {1.652705, 2.345623},  // df=195
    {1.652665, 2.345524},  // df=196
    {1.652625, 2.345425},  // df=197
    {1.652586, 2.345328},  // df=198
    {1.652547, 2.345232},  // df=199
    {1.652508, 2.345137},  // df=200
};

}  // namespace

double t_critical(int df, double confidence) {
    if (df < 1) throw std::invalid_argument("t_critical: df must be positive");
    int level;
    if (std::abs(confidence - 0.95) < 1e-12) level = 0;
    else if (std::abs(confidence - 0.99) < 1e-12) level = 1;
    else throw std::invalid_argument("t_critical: table covers confidence 0.95 and 0.99");
    if (df <= 200) return kTCritical[df - 1][level];
    return level == 0 ? 1.644854 : 2.326348;  // normal asymptote
}

TTestResult paired_t_test(std::span<const double> scores_a,
                          std::span<const double> scores_b, double confidence) {
    if (scores_a.size() != scores_b.size())
        throw std::invalid_argument("paired_t_test: length mismatch");
    const std::size_t n = scores_a.size();
    if (n < 2) throw std::invalid_argument("paired_t_test: need at least two pairs");

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += scores_a[i] - scores_b[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = scores_a[i] - scores_b[i] - mean;
        ss += d * d;
    }
    double sd = std::sqrt(ss / static_cast<double>(n - 1));

    TTestResult out;
    if (sd == 0.0) {
        if (mean > 0.0) {
            out.t_stat = std::numeric_limits<double>::infinity();
            out.a_beats_b = true;
        } else if (mean < 0.0) {
            out.t_stat = -std::numeric_limits<double>::infinity();
            out.a_beats_b = false;
        } else {
            out.t_stat = 0.0;
            out.a_beats_b = false;
        }
        return out;
    }
    out.t_stat = mean / (sd / std::sqrt(static_cast<double>(n)));
    out.a_beats_b = out.t_stat > t_critical(static_cast<int>(n) - 1, confidence);
    return out;
}

}  // namespace rdep

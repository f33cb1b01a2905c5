#pragma once

#include <string_view>
#include <vector>

#include "genergy/spectrum.hpp"

// Published completion tables and maximal-energy graphs used by the
// verify-tables command and the acceptance suite. Numbers are kept as the
// printed strings so comparisons happen at the printed precision.

namespace genergy::reference {

struct TableRow {
  int p;
  int q;
  std::string_view x;
  std::string_view y;
  std::string_view energy;
  /// Empty when the table prints only the test mark.
  std::string_view third_over_6;
  /// '+' pass, '-' fail, ' ' not stated.
  char mark;
};

struct CompletionTable {
  std::string_view title;
  int n;
  int m;
  std::vector<double> known;
  std::vector<TableRow> rows;
};

inline const std::vector<CompletionTable>& completion_tables() {
  const double a = kPhi - 1;
  const double b = -kPhi;
  static const std::vector<CompletionTable> tables = {
      {"regular of degree 10 on 16 vertices: n=16 m=80 K={10}",
       16,
       80,
       {10},
       {
           {1, 14, "-7.7220", "-0.1627", "20.0000", "89.9136", ' '},
           {1, 14, "6.3887", "-1.1706", "32.7773", "206.3830", ' '},
           {2, 13, "-5.4741", "0.0729", "21.8963", "111.9900", ' '},
           {2, 13, "4.1407", "-1.4063", "36.5629", "184.3060", ' '},
           {3, 12, "-4.4379", "0.2761", "26.6274", "123.0070", ' '},
           {3, 12, "3.1046", "-1.6095", "38.6274", "173.2900", ' '},
           {4, 11, "-3.7936", "0.4704", "30.3489", "130.4600", ' '},
           {4, 11, "2.4603", "-1.8037", "39.6822", "165.8360", ' '},
           {5, 10, "-3.3333", "0.6667", "33.3333", "136.2960", ' '},
           {5, 10, "2.0000", "-2.0000", "40.0000", "160.0000", ' '},
           {6, 9, "-2.9761", "0.8729", "35.7128", "141.3050", ' '},
           {6, 9, "1.6427", "-2.2063", "39.7128", "154.9910", ' '},
           {7, 8, "-2.6825", "1.0972", "37.5547", "145.9080", ' '},
           {7, 8, "1.3491", "-2.4305", "38.8880", "150.3880", ' '},
       }},
      {"10 vertices, 30 edges, simple largest eigenvalue: n=10 m=30 K={6}",
       10,
       30,
       {6},
       {
           {1, 8, "-4.8830", "-0.1396", "12.0000", "16.5911", ' '},
           {1, 8, "3.5497", "-1.1937", "19.0994", "41.1866", ' '},
           {2, 7, "-3.4555", "0.1302", "13.8221", "22.2487", ' '},
           {2, 7, "2.1222", "-1.4635", "20.4888", "35.5290", ' '},
           {3, 6, "-2.7749", "0.3874", "16.6491", "25.3752", ' '},
           {3, 6, "1.4415", "-1.7208", "20.6491", "32.4025", ' '},
           {4, 5, "-2.3333", "0.6667", "18.6667", "27.7778", ' '},
           {4, 5, "1.0000", "-2.0000", "20.0000", "30.0000", ' '},
       }},
      {"10 vertices, 9 edges, simple eigenvalue 3: n=10 m=9 K={3}",
       10,
       9,
       {3},
       {
           {1, 8, "-3.0000", "0.0000", "6.0000", "0.0000", ' '},
           {1, 8, "2.3333", "-0.6667", "10.6667", "6.2222", ' '},
           {2, 7, "-2.0972", "0.1706", "8.3887", "1.4313", ' '},
           {2, 7, "1.4305", "-0.8373", "11.7220", "4.7910", ' '},
           {3, 6, "-1.6667", "0.3333", "10.0000", "2.2222", ' '},
           {3, 6, "1.0000", "-1.0000", "12.0000", "4.0000", ' '},
           {4, 5, "-1.3874", "0.5099", "11.0994", "2.8300", ' '},
           {4, 5, "0.7208", "-1.1766", "11.7661", "3.3922", ' '},
       }},
      {"15-regular on 18 vertices: n=18 m=135 K={15}",
       18,
       135,
       {15},
       {
           {1, 16, "-6.3501", "-0.5406", "30.0000", "519.4020", '-'},
           {1, 16, "4.5854", "-1.2241", "39.1708", "573.6770", '-'},
           {2, 15, "-4.6259", "-0.3832", "30.0000", "529.3640", '-'},
           {2, 15, "2.8612", "-1.3815", "41.4446", "563.7160", '-'},
           {3, 14, "-3.8353", "-0.2496", "30.0000", "534.2570", '-'},
           {3, 14, "2.0706", "-1.5151", "42.4234", "558.8230", '-'},
           {4, 13, "-3.3466", "-0.1241", "30.0000", "537.5080", '-'},
           {4, 13, "1.5819", "-1.6406", "42.6554", "555.5720", '-'},
           {5, 12, "-3.0000", "0.0000", "30.0000", "540.0000", '+'},
           {5, 12, "1.2353", "-1.7647", "42.3529", "553.0800", '-'},
           {6, 11, "-2.7332", "0.1272", "32.7983", "542.0860", '-'},
           {6, 11, "0.9685", "-1.8919", "41.6218", "550.9940", '-'},
           {7, 10, "-2.5162", "0.2613", "35.2261", "543.9450", '-'},
           {7, 10, "0.7514", "-2.0260", "40.5203", "549.1350", '-'},
           {8, 9, "-2.3322", "0.4064", "37.3153", "545.6870", '-'},
           {8, 9, "0.5675", "-2.1711", "39.0800", "547.3930", '-'},
       }},
      {"15-regular on 18 vertices, four complement components: K={15,-3,-3,-3}",
       18,
       135,
       {15, -3, -3, -3},
       {
           {1, 13, "-4.2136", "-0.1374", "30.0000", "", '-'},
           {1, 13, "3.3565", "-0.7197", "36.7129", "", '-'},
           {2, 12, "-3.0000", "0.0000", "30.0000", "", '+'},
           {2, 12, "2.1429", "-0.8571", "38.5714", "", '-'},
           {3, 11, "-2.4387", "0.1197", "32.6325", "", '-'},
           {3, 11, "1.5816", "-0.9768", "39.4896", "", '-'},
           {4, 10, "-2.0884", "0.2354", "34.7074", "", '-'},
           {4, 10, "1.2313", "-1.0925", "39.8502", "", '-'},
           {5, 9, "-1.8370", "0.3539", "36.3700", "", '-'},
           {5, 9, "0.9799", "-1.2110", "39.7986", "", '-'},
           {6, 8, "-1.6408", "0.4806", "37.6891", "", '-'},
           {6, 8, "0.7836", "-1.3377", "39.4033", "", '-'},
           {7, 7, "-1.4784", "0.6212", "38.6969", "", '-'},
           {7, 7, "0.6212", "-1.4784", "38.6969", "", '-'},
       }},
      {"15-regular on 18 vertices, two pentagons in the complement",
       18,
       135,
       {15, -3, -3, -3, a, a, a, a, b, b, b, b},
       {
           {1, 5, "-2.4415", "0.0883", "35.8273", "", '-'},
           {1, 5, "1.7749", "-0.7550", "38.4940", "", '-'},
           {2, 4, "-1.6667", "0.3333", "37.6109", "", '-'},
           {2, 4, "1.0000", "-1.0000", "38.9443", "", '+'},
           {3, 3, "-1.2761", "0.6095", "38.6011", "", '-'},
           {3, 3, "0.6095", "-1.2761", "38.6011", "", '-'},
       }},
      {"15-regular on 18 vertices, two quadrangles in the complement",
       18,
       135,
       {15, -3, -3, -3, -1, -1, -1, -1, 1, 1},
       {
           {1, 7, "-3.4580", "-0.0774", "34.0000", "", '-'},
           {1, 7, "2.4580", "-0.9226", "38.9161", "", '-'},
           {2, 6, "-2.4365", "0.1455", "35.7460", "", '-'},
           {2, 6, "1.4365", "-1.1455", "39.7460", "", '-'},
           {3, 5, "-1.9434", "0.3660", "37.6603", "", '-'},
           {3, 5, "0.9434", "-1.3660", "39.6603", "", '-'},
           {4, 4, "-1.6180", "0.6180", "38.9443", "", '+'},
           {4, 4, "0.6180", "-1.6180", "38.9443", "", '+'},
       }},
  };
  return tables;
}

struct MaximalEnergyGraph {
  int n;
  std::string_view graph6;
  int m;
  double energy;
  int distinct;
  std::vector<EigenGroup> spectrum;
};

/// Maximal energy graphs on 7..12 vertices, with spectra printed to three
/// decimals.
inline const std::vector<MaximalEnergyGraph>& maximal_energy_graphs() {
  static const std::vector<MaximalEnergyGraph> graphs = {
      {7, "F`~~w", 17, 12, 4, {{5, 1}, {1, 1}, {-1, 4}, {-2, 1}}},
      {8,
       "G`lv~{",
       21,
       14.325,
       7,
       {{5.427, 1}, {1.118, 1}, {0.618, 1}, {-1, 2}, {-1.618, 1}, {-1.679, 1}, {-1.865, 1}}},
      {9, "HEutZhj", 21, 17.060, 6, {{4.702, 1}, {1.414, 2}, {1, 1}, {-1.414, 2}, {-1.702, 1}, {-2, 2}}},
      {10, "I~qkzXZLw", 30, 20, 3, {{6, 1}, {1, 4}, {-2, 5}}},
      {11, "JJ^em]uj[v_", 36, 22.918, 5, {{6.585, 1}, {1.874, 1}, {1, 3}, {-1.459, 1}, {-2, 5}}},
      {12, "K~z\\c\\qRXVa~", 42, 26, 5, {{7, 1}, {2, 2}, {1, 2}, {-1, 1}, {-2, 6}}},
  };
  return graphs;
}

}  // namespace genergy::reference

#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

namespace goldens {

inline std::string squash(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

inline const std::vector<std::pair<long long, std::string>>& ramanujan_table() {
  static const std::vector<std::pair<long long, std::string>> t = {
      {11, "x-1"}, {35, "x^2+x-1"}, {59, "x^3+2x-1"}, {83, "x^3+2x^2+2x-1"}, {107, "x^3-2x^2+4x-1"}};
  return t;
}

inline const std::string T299 = "x^{8} + x^{7}-x^{6}-12x^{5}+16x^{4} -12x^{3} + 15x^{2} -13x +1";
inline const std::string W299 =
    "x^{24} - 8x^{23}-12x^{22}-28x^{21}-56x^{20} -40x^{19} + 144x^{18} +144x^{17} +16x^{16} -112x^{15} "
    "-224x^{14} -416x^{13} -32x^{12} +256x^{11} +704x^{10} + 832x^{9} +640x^{8} -384x^{7} -1792x^{6} "
    "-1280x^{5} -256x^{4} +1280x^{3} +1536x^{2} +512x +256";
inline const std::string M299_13 =
    "x^{8} + 78x^{7}+793x^{6}+5070x^{5}+20956x^{4} +65910x^{3} + 134017x^{2} +171366x +28561";
inline const std::string M299_5_7 = "x^{8} - 8x^{7}+31x^{6}-22x^{5}+28x^{4} -2x^{3} - 19x^{2} +8x -1";
inline const std::string M299_3_13 = "x^{8} - 6x^{7}+16x^{6}+12x^{5}-23x^{4} +12x^{3} + 16x^{2} -6x +1";

// Listings above use x^{n}; drop the braces and blanks.
inline std::string normalize(std::string s) {
  s = squash(std::move(s));
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '{' || c == '}'; }), s.end());
  return s;
}

}  // namespace goldens

#include "latbound/catalog.hpp"

#include <cmath>

#include "latbound/error.hpp"

namespace latbound {

namespace {

struct Shell {
  int norm_sq;
  std::uint64_t count;
};

// D4 and E8 follow 24 * sigma_1(odd part of m) and 240 * sigma_3(m) at norm
// 2m. BW16 was enumerated. Leech counts come from its theta series,
// 65520/691 * (sigma_11(m) - tau(m)).
constexpr Shell kD4[] = {
    {2, 24ULL},
    {4, 24ULL},
    {6, 96ULL},
    {8, 24ULL},
    {10, 144ULL},
    {12, 96ULL},
    {14, 192ULL},
    {16, 24ULL},
    {18, 312ULL},
    {20, 144ULL},
    {22, 288ULL},
    {24, 96ULL},
    {26, 336ULL},
    {28, 192ULL},
    {30, 576ULL},
    {32, 24ULL},
    {34, 432ULL},
    {36, 312ULL},
    {38, 480ULL},
    {40, 144ULL},
    {42, 768ULL},
    {44, 288ULL},
    {46, 576ULL},
    {48, 96ULL},
};

constexpr Shell kE8[] = {
    {2, 240ULL},
    {4, 2160ULL},
    {6, 6720ULL},
    {8, 17520ULL},
    {10, 30240ULL},
    {12, 60480ULL},
    {14, 82560ULL},
    {16, 140400ULL},
    {18, 181680ULL},
    {20, 272160ULL},
    {22, 319680ULL},
    {24, 490560ULL},
    {26, 527520ULL},
    {28, 743040ULL},
    {30, 846720ULL},
    {32, 1123440ULL},
    {34, 1179360ULL},
    {36, 1635120ULL},
    {38, 1646400ULL},
    {40, 2207520ULL},
    {42, 2311680ULL},
    {44, 2877120ULL},
    {46, 2920320ULL},
    {48, 3931200ULL},
};

constexpr Shell kBW16[] = {
    {4, 4320ULL},
    {6, 61440ULL},
    {8, 522720ULL},
    {10, 2211840ULL},
    {12, 8960640ULL},
    {14, 23224320ULL},
    {16, 67154400ULL},
};

constexpr Shell kLeech[] = {
    {4, 196560ULL},
    {6, 16773120ULL},
    {8, 398034000ULL},
    {10, 4629381120ULL},
    {12, 34417656000ULL},
    {14, 187489935360ULL},
    {16, 814879774800ULL},
    {18, 2975551488000ULL},
    {20, 9486551299680ULL},
    {22, 27052945920000ULL},
    {24, 70486236999360ULL},
    {26, 169931095326720ULL},
    {28, 384163586352000ULL},
};

template <std::size_t N>
DistanceSpectrum build(const std::string& name, int n, double log_det,
                       const Shell (&shells)[N]) {
  DistanceSpectrum s;
  s.name = name;
  s.n = n;
  s.log_density = 0.0 - log_det / n;  // never -0
  for (const auto& shell : shells) {
    s.entries.push_back({static_cast<double>(shell.norm_sq), shell.count});
  }
  s.complete_radius = std::sqrt(s.entries.back().norm_sq);
  return s;
}

}  // namespace

std::vector<std::string> catalog_names() { return {"D4", "E8", "BW16", "Leech"}; }

DistanceSpectrum catalog_spectrum(const std::string& name, std::size_t shells) {
  DistanceSpectrum s;
  if (name == "D4") {
    s = build(name, 4, std::log(2.0), kD4);
  } else if (name == "E8") {
    s = build(name, 8, 0.0, kE8);
  } else if (name == "BW16") {
    s = build(name, 16, std::log(16.0), kBW16);
  } else if (name == "Leech") {
    s = build(name, 24, 0.0, kLeech);
  } else {
    throw Error(ErrorCode::UnknownLattice, "no catalog spectrum for '" + name + "'");
  }
  if (shells > s.entries.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "catalog for '" + name + "' has only " +
                    std::to_string(s.entries.size()) + " shells");
  }
  return truncate_shells(s, shells);
}

}  // namespace latbound

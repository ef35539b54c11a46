// Regenerates the committed golden JSON files for the catalog objects.
// Run from the repository root: build/tools/gen_golden [out_dir]
// The files are format-regression anchors; rerun only on a deliberate format
// change and commit the diff.

#include <iostream>
#include <string>

#include "qsym/catalog.hpp"
#include "qsym/json_io.hpp"
#include "qsym/universal.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "tests/golden";
  using qsym::write_json_file;

  qsym::TwoPointModel tp = qsym::two_point_model();
  write_json_file(dir + "/two_point.filtration.json", qsym::filtration_to_json(tp.spec));
  write_json_file(dir + "/two_point.certificate.json", qsym::certificate_to_json(tp.certificate));

  qsym::FreeOrthogonalModel fo = qsym::free_orthogonal_model(qsym::Matrix::identity(2));
  write_json_file(dir + "/free_orthogonal_I2.filtration.json", qsym::filtration_to_json(fo.spec));
  write_json_file(dir + "/free_orthogonal_I2.certificate.json",
                  qsym::certificate_to_json(fo.certificate));
  write_json_file(dir + "/free_orthogonal_I2.universal.json",
                  qsym::presentation_to_json(qsym::universal_presentation(fo.spec)));

  qsym::SegmentsModel seg = qsym::segments_model({2, 2});
  write_json_file(dir + "/segments_d2_N2.filtration.json", qsym::filtration_to_json(seg.spec));
  write_json_file(dir + "/segments_d2_N2.hyper.certificate.json",
                  qsym::certificate_to_json(seg.hyper));
  write_json_file(dir + "/segments_d2_N2.quotient.certificate.json",
                  qsym::certificate_to_json(seg.quotient));
  write_json_file(dir + "/segments_d2_N2.permutation.certificate.json",
                  qsym::certificate_to_json(seg.permutation));

  qsym::SegmentsModel seg1 = qsym::segments_model({2, 1});
  write_json_file(dir + "/segments_d2_N1.universal.json",
                  qsym::presentation_to_json(qsym::universal_presentation(seg1.spec)));

  std::cout << "golden files written to " << dir << "\n";
  return 0;
}

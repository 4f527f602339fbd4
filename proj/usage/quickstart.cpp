// Generate a planted-pattern problem, learn shapelets on it and classify the test split.
// Optionally writes the generated data as .ts files for use with the mvst command-line tool:
//   quickstart [output-dir]

#include <mvst/mvst.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
  mvst::synthetic::PlantedConfig pc;
  pc.aligned = false; // each dimension gets its own phase
  const auto data = mvst::synthetic::planted(pc);

  if (argc > 1) {
    const std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    mvst::io::write_dataset_file((dir / "Planted_TRAIN.ts").string(), data.train);
    mvst::io::write_dataset_file((dir / "Planted_TEST.ts").string(), data.test);
  }

  mvst::SearchConfig search;
  search.variant = mvst::ShapeletVariant::MultiIndependent;
  search.total_shapelets = 2000;
  search.seed = 1;
  search.threads = 4;

  const auto result = mvst::st_pipeline(data.train, data.test, search);
  std::cout << "kept " << result.shapelets.size() << " shapelets; best quality "
            << *result.shapelets.front().quality << '\n';
  std::cout << "st-i accuracy " << mvst::accuracy(result.predictions, data.test) << '\n';

  mvst::AlgorithmConfig baseline;
  const auto dtw = mvst::fit_predict(mvst::Algorithm::DtwI, data.train, data.test, baseline);
  std::cout << "dtw-i accuracy " << mvst::accuracy(dtw.predictions, data.test) << '\n';
}

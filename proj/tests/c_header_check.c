/*
  Copyright 2026 The mirrorfit Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

/* Compiled as C99: proves the public header needs no C++ compiler. */

#include <mirrorfit.h>

const char* mirrorfit_c_header_check(void) {
  mf_detect_options detect_opts;
  mf_detect_options_init(&detect_opts);
  mf_synth_options synth_opts;
  mf_synth_options_init(&synth_opts, 2, 10);
  mf_sweep_options sweep_opts;
  mf_sweep_options_init(&sweep_opts, 2, 10);
  (void)detect_opts;
  (void)synth_opts;
  (void)sweep_opts;
  return mf_version();
}

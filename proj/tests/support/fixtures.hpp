#pragma once

// Shared program fixtures used across test suites.

namespace fixtures {

// Counting 1..N with a for loop; the canonical correct solution.
inline const char* kCountForLoop = R"(int main(){
    int n, i;
    scanf("%d", &n);
    for(i = 1; i <= n; i++){
        printf("%d\n", i);
    }
    return 0;
}
)";

// Same assignment written with a helper function and a while loop, but the
// loop variable is never initialized before the call.
inline const char* kCountHelperUninit = R"(void loop(int j, int l){
  while (l >= j){
    printf("%d\n", j);
    ++j;
  }
}
int main(){
  int j, l;
  scanf("%d", &l);
  loop(j, l);
  return 0;
}
)";

// The fixed form of kCountHelperUninit.
inline const char* kCountHelperFixed = R"(void loop(int j, int l){
  while (l >= j){
    printf("%d\n", j);
    ++j;
  }
}
int main(){
  int j, l;
  scanf("%d", &l);
  j = 1;
  loop(j, l);
  return 0;
}
)";

inline const char* kBlockAssign = "int main(){ int a, b; a = 2; b = 1; { a = a - b; } return 0; }";

}  // namespace fixtures

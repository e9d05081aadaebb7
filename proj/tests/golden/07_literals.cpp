const char* s = "if { } ?";
char c = '{';
int n = 42;
double d = 1.5e3;

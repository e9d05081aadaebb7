// if while for
int x; /* else { } */
/* multi
   line */
int y; // trailing
